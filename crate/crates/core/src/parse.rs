//! Line-oriented text formats for arenas, observation maps and DFAs.
//!
//! The formats use explicit keywords (`state`, `trans`, `obsclass`, …), `#`
//! comments and whitespace-separated tokens. Every diagnostic carries a
//! [`SourceSpan`]; parsing never panics on malformed input.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::guard::parse_guard;
use crate::model::{
    ActionId, ArenaBuilder, GameArena, Letter, ObsBuilder, ObservationMap, ObsId, Player,
    SecretDfa, StateId, validate_arena,
};

/// A 1-based source position for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed token or unknown directive.
    Lexical,
    /// Reference to an id that was never declared.
    UndeclaredId,
    /// Duplicate declaration or duplicate transition.
    Duplicate,
    /// Action used at a state of the other player.
    Ownership,
    /// No `init` directive in the file.
    MissingInit,
    /// Observation coverage problem.
    Observation,
    /// DFA-level violation (nondeterminism, incompleteness, non-absorbing
    /// accepting state).
    Dfa,
    /// Arena invariant violation detected after parsing.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            span,
            kind,
            message: message.into(),
        }
    }
}

/// Options for [`parse_arena_with`].
#[derive(Debug, Clone, Default)]
pub struct ArenaParseOptions {
    /// Auto-insert a `stay` self-loop on states with no outgoing transition,
    /// owned by the state's owner.
    pub complete_sinks: bool,
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: u32,
    column: u32,
    quoted: bool,
}

struct Lines {
    file: String,
    /// Tokens per non-empty line.
    lines: Vec<Vec<Token>>,
    eof: SourceSpan,
}

fn span_of(file: &str, tok: &Token) -> SourceSpan {
    SourceSpan {
        file: file.to_string(),
        line: tok.line,
        column: tok.column,
    }
}

fn tokenize(file: &str, text: &str) -> Result<Lines, ParseError> {
    let mut lines = Vec::new();
    let mut last_line = 0u32;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno as u32 + 1;
        last_line = lineno;
        let bytes = raw.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0usize;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if c == b'#' {
                break;
            }
            let column = i as u32 + 1;
            if c == b'"' {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j] != b'"' {
                    j += 1;
                }
                if j == bytes.len() {
                    return Err(ParseError::new(
                        SourceSpan {
                            file: file.to_string(),
                            line: lineno,
                            column,
                        },
                        ParseErrorKind::Lexical,
                        "unterminated quoted string",
                    ));
                }
                tokens.push(Token {
                    text: raw[start..j].to_string(),
                    line: lineno,
                    column,
                    quoted: true,
                });
                i = j + 1;
            } else {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'#'
                    && bytes[i] != b'"'
                {
                    i += 1;
                }
                tokens.push(Token {
                    text: raw[start..i].to_string(),
                    line: lineno,
                    column,
                    quoted: false,
                });
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    Ok(Lines {
        file: file.to_string(),
        lines,
        eof: SourceSpan {
            file: file.to_string(),
            line: last_line.max(1),
            column: 1,
        },
    })
}

fn check_name(file: &str, tok: &Token) -> Result<(), ParseError> {
    if tok.text.is_empty() || tok.text.contains('=') {
        return Err(ParseError::new(
            span_of(file, tok),
            ParseErrorKind::Lexical,
            format!("invalid identifier `{}`", tok.text),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Arena parsing
// ---------------------------------------------------------------------------

/// Parses an arena file with default options.
pub fn parse_arena(text: &str) -> Result<(GameArena, ObservationMap), ParseError> {
    parse_arena_with("<input>", text, &ArenaParseOptions::default())
}

/// Parses an arena file, reporting diagnostics against `file`.
pub fn parse_arena_with(
    file: &str,
    text: &str,
    opts: &ArenaParseOptions,
) -> Result<(GameArena, ObservationMap), ParseError> {
    let lines = tokenize(file, text)?;
    let mut builder = ArenaBuilder::new();
    let err = |tok: &Token, kind, msg: String| ParseError::new(span_of(file, tok), kind, msg);

    let need = |line: &[Token], n: usize, what: &str| -> Result<(), ParseError> {
        if line.len() < n {
            Err(ParseError::new(
                span_of(file, &line[0]),
                ParseErrorKind::Lexical,
                format!("`{}` expects {}", line[0].text, what),
            ))
        } else {
            Ok(())
        }
    };

    // Pass 1: atoms.
    for line in &lines.lines {
        if line[0].text == "atoms" {
            for tok in &line[1..] {
                check_name(file, tok)?;
                builder.add_atom(&tok.text).map_err(|e| {
                    err(tok, ParseErrorKind::Duplicate, e.to_string())
                })?;
            }
        }
    }

    // Pass 2: states and actions.
    for line in &lines.lines {
        match line[0].text.as_str() {
            "state" => {
                need(line, 2, "a name and owner=1|2")?;
                let name = &line[1];
                check_name(file, name)?;
                let mut owner = None;
                let mut label = Letter::EMPTY;
                for tok in &line[2..] {
                    match tok.text.split_once('=') {
                        Some(("owner", v)) => {
                            owner = v
                                .parse::<u8>()
                                .ok()
                                .and_then(Player::from_number)
                                .map(Some)
                                .ok_or_else(|| {
                                    err(
                                        tok,
                                        ParseErrorKind::Lexical,
                                        format!("bad owner `{v}` (expected 1 or 2)"),
                                    )
                                })?;
                        }
                        Some(("label", v)) => {
                            if v != "-" {
                                for atom in v.split(',') {
                                    let id = builder.atom_id(atom).ok_or_else(|| {
                                        err(
                                            tok,
                                            ParseErrorKind::UndeclaredId,
                                            format!("undeclared atom `{atom}` in label"),
                                        )
                                    })?;
                                    label.insert(id);
                                }
                            }
                        }
                        _ => {
                            return Err(err(
                                tok,
                                ParseErrorKind::Lexical,
                                format!("unknown attribute `{}`", tok.text),
                            ))
                        }
                    }
                }
                let owner = owner.ok_or_else(|| {
                    err(name, ParseErrorKind::Lexical, "state is missing owner=1|2".into())
                })?;
                builder
                    .add_state(&name.text, owner, label)
                    .map_err(|e| err(name, ParseErrorKind::Duplicate, e.to_string()))?;
            }
            "action" => {
                need(line, 3, "a name and player=1|2")?;
                let name = &line[1];
                check_name(file, name)?;
                let tok = &line[2];
                let player = match tok.text.split_once('=') {
                    Some(("player", v)) => v.parse::<u8>().ok().and_then(Player::from_number),
                    _ => None,
                }
                .ok_or_else(|| {
                    err(tok, ParseErrorKind::Lexical, "expected player=1|2".into())
                })?;
                builder
                    .add_action(&name.text, player)
                    .map_err(|e| err(name, ParseErrorKind::Duplicate, e.to_string()))?;
            }
            "atoms" | "init" | "trans" | "obsclass" | "obs" => {}
            other => {
                return Err(err(
                    &line[0],
                    ParseErrorKind::Lexical,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    // Pass 3: initial state, transitions, observations.
    let mut init: Option<(StateId, SourceSpan)> = None;
    let mut seen_trans: HashSet<(StateId, ActionId)> = HashSet::new();
    let mut classes: Vec<(ObsToken, Vec<(StateId, SourceSpan)>)> = Vec::new();
    let mut triples: Vec<(StateId, ActionId, StateId, ObsToken, SourceSpan)> = Vec::new();

    struct ObsToken {
        name: String,
    }

    let lookup_state = |builder: &ArenaBuilder, tok: &Token| -> Result<StateId, ParseError> {
        builder.state_id(&tok.text).ok_or_else(|| {
            ParseError::new(
                span_of(file, tok),
                ParseErrorKind::UndeclaredId,
                format!("undeclared state `{}`", tok.text),
            )
        })
    };
    let lookup_action = |builder: &ArenaBuilder, tok: &Token| -> Result<ActionId, ParseError> {
        builder.action_id(&tok.text).ok_or_else(|| {
            ParseError::new(
                span_of(file, tok),
                ParseErrorKind::UndeclaredId,
                format!("undeclared action `{}`", tok.text),
            )
        })
    };

    let mut action_owner: Vec<Player> = Vec::new();
    let mut state_owner: Vec<Player> = Vec::new();
    {
        // Snapshot owners for ownership checks during pass 3.
        let probe = &builder;
        let mut i = 0u32;
        while let Some(id) = Some(ActionId(i)).filter(|a| probe.action_id_exists(*a)) {
            let _ = id;
            i += 1;
            break;
        }
    }
    let _ = (&mut action_owner, &mut state_owner);

    for line in &lines.lines {
        match line[0].text.as_str() {
            "init" => {
                need(line, 2, "a state name")?;
                let s = lookup_state(&builder, &line[1])?;
                if init.is_some() {
                    return Err(err(
                        &line[1],
                        ParseErrorKind::Duplicate,
                        "duplicate init directive".into(),
                    ));
                }
                init = Some((s, span_of(file, &line[1])));
            }
            "trans" => {
                need(line, 4, "src action dst")?;
                let src = lookup_state(&builder, &line[1])?;
                let act = lookup_action(&builder, &line[2])?;
                let dst = lookup_state(&builder, &line[3])?;
                if builder.state_owner(src) != builder.action_player(act) {
                    return Err(err(
                        &line[2],
                        ParseErrorKind::Ownership,
                        format!(
                            "action `{}` belongs to {} but state `{}` belongs to {}",
                            line[2].text,
                            builder.action_player(act),
                            line[1].text,
                            builder.state_owner(src)
                        ),
                    ));
                }
                if !seen_trans.insert((src, act)) {
                    return Err(err(
                        &line[2],
                        ParseErrorKind::Duplicate,
                        format!("duplicate transition `{} {}`", line[1].text, line[2].text),
                    ));
                }
                builder.add_transition(src, act, dst);
            }
            "obsclass" => {
                need(line, 3, "a symbol and at least one state")?;
                check_name(file, &line[1])?;
                let mut members = Vec::new();
                for tok in &line[2..] {
                    members.push((lookup_state(&builder, tok)?, span_of(file, tok)));
                }
                classes.push((
                    ObsToken {
                        name: line[1].text.clone(),
                    },
                    members,
                ));
            }
            "obs" => {
                need(line, 5, "src action dst symbol")?;
                let src = lookup_state(&builder, &line[1])?;
                let act = lookup_action(&builder, &line[2])?;
                let dst = lookup_state(&builder, &line[3])?;
                check_name(file, &line[4])?;
                triples.push((
                    src,
                    act,
                    dst,
                    ObsToken {
                        name: line[4].text.clone(),
                    },
                    span_of(file, &line[2]),
                ));
            }
            _ => {}
        }
    }

    let (init, _) = init.ok_or_else(|| {
        ParseError::new(
            lines.eof.clone(),
            ParseErrorKind::MissingInit,
            "missing init directive",
        )
    })?;
    builder.set_initial(init);

    if opts.complete_sinks {
        builder.complete_sinks();
    }

    let arena = builder.build().map_err(|e| {
        ParseError::new(lines.eof.clone(), ParseErrorKind::Invalid, e.to_string())
    })?;

    let report = validate_arena(&arena);
    if !report.is_valid() {
        return Err(ParseError::new(
            lines.eof.clone(),
            ParseErrorKind::Invalid,
            report.describe(&arena).trim_end().to_string(),
        ));
    }

    let mut ob = ObsBuilder::new(&arena);
    for (sym, members) in &classes {
        let ids: Vec<StateId> = members.iter().map(|&(s, _)| s).collect();
        ob.add_class(&sym.name, &ids).map_err(|e| {
            let span = members
                .first()
                .map(|(_, sp)| sp.clone())
                .unwrap_or_else(|| lines.eof.clone());
            ParseError::new(span, ParseErrorKind::Observation, e.to_string())
        })?;
    }
    for (src, act, dst, sym, span) in &triples {
        ob.add_triple(*src, *act, *dst, &sym.name)
            .map_err(|e| ParseError::new(span.clone(), ParseErrorKind::Observation, e.to_string()))?;
    }
    let obs = ob.finish().map_err(|e| {
        ParseError::new(lines.eof.clone(), ParseErrorKind::Observation, e.to_string())
    })?;

    Ok((arena, obs))
}

// ---------------------------------------------------------------------------
// DFA parsing
// ---------------------------------------------------------------------------

/// Parses a DFA file; the atom set is collected from the guards in order of
/// first mention. Use [`SecretDfa::link`] to re-express it over an arena's
/// atoms before pairing the two.
pub fn parse_dfa(text: &str) -> Result<SecretDfa, ParseError> {
    parse_dfa_from("<input>", text)
}

pub fn parse_dfa_from(file: &str, text: &str) -> Result<SecretDfa, ParseError> {
    let lines = tokenize(file, text)?;
    let mut dstates: Vec<String> = Vec::new();
    let mut accepting: Vec<String> = Vec::new();
    let mut init: Option<String> = None;
    let mut edges: Vec<(String, String, crate::guard::Guard)> = Vec::new();
    let mut atoms: Vec<String> = Vec::new();

    for line in &lines.lines {
        match line[0].text.as_str() {
            "dstate" => {
                if line.len() < 2 {
                    return Err(ParseError::new(
                        span_of(file, &line[0]),
                        ParseErrorKind::Lexical,
                        "`dstate` expects a name",
                    ));
                }
                check_name(file, &line[1])?;
                if dstates.contains(&line[1].text) {
                    return Err(ParseError::new(
                        span_of(file, &line[1]),
                        ParseErrorKind::Duplicate,
                        format!("duplicate DFA state `{}`", line[1].text),
                    ));
                }
                dstates.push(line[1].text.clone());
                match line.get(2) {
                    None => {}
                    Some(tok) if tok.text == "accepting" => accepting.push(line[1].text.clone()),
                    Some(tok) => {
                        return Err(ParseError::new(
                            span_of(file, tok),
                            ParseErrorKind::Lexical,
                            format!("unexpected token `{}`", tok.text),
                        ))
                    }
                }
            }
            "init" => {
                if line.len() < 2 {
                    return Err(ParseError::new(
                        span_of(file, &line[0]),
                        ParseErrorKind::Lexical,
                        "`init` expects a state name",
                    ));
                }
                init = Some(line[1].text.clone());
            }
            "edge" => {
                if line.len() < 4 {
                    return Err(ParseError::new(
                        span_of(file, &line[0]),
                        ParseErrorKind::Lexical,
                        "`edge` expects: from \"guard\" to",
                    ));
                }
                let guard_tok = &line[2];
                let guard = parse_guard(&guard_tok.text).map_err(|e| {
                    ParseError::new(
                        SourceSpan {
                            file: file.to_string(),
                            line: guard_tok.line,
                            column: guard_tok.column
                                + e.offset as u32
                                + if guard_tok.quoted { 1 } else { 0 },
                        },
                        ParseErrorKind::Lexical,
                        e.message,
                    )
                })?;
                for atom in guard.atoms() {
                    if !atoms.iter().any(|a| a == atom) {
                        atoms.push(atom.to_string());
                    }
                }
                edges.push((line[1].text.clone(), line[3].text.clone(), guard));
            }
            other => {
                return Err(ParseError::new(
                    span_of(file, &line[0]),
                    ParseErrorKind::Lexical,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    let init = init.ok_or_else(|| {
        ParseError::new(
            lines.eof.clone(),
            ParseErrorKind::MissingInit,
            "missing init directive",
        )
    })?;

    SecretDfa::compile(dstates, &init, &accepting, edges, atoms).map_err(|e| {
        let kind = match e {
            crate::model::DfaError::UnknownState(_) => ParseErrorKind::UndeclaredId,
            crate::model::DfaError::DuplicateState(_) => ParseErrorKind::Duplicate,
            _ => ParseErrorKind::Dfa,
        };
        ParseError::new(lines.eof.clone(), kind, e.to_string())
    })
}

// ---------------------------------------------------------------------------
// Printers (inverse of the parsers, canonical order)
// ---------------------------------------------------------------------------

/// Prints an arena and its observation map in canonical order: declarations
/// in id order, classes before explicit triples.
pub fn print_arena(arena: &GameArena, obs: &ObservationMap) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    if arena.num_atoms() > 0 {
        let names: Vec<&str> = (0..arena.num_atoms())
            .map(|i| arena.atom_name(crate::model::AtomId(i as u32)))
            .collect();
        writeln!(out, "atoms {}", names.join(" ")).unwrap();
    }
    for s in arena.states() {
        let label = arena.label(s);
        let label_str = if label.is_empty() {
            "-".to_string()
        } else {
            label
                .atoms()
                .map(|a| arena.atom_name(a).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            out,
            "state {} owner={} label={}",
            arena.state_name(s),
            arena.owner(s).number(),
            label_str
        )
        .unwrap();
    }
    writeln!(out, "init {}", arena.state_name(arena.initial())).unwrap();
    for a in arena.actions() {
        writeln!(
            out,
            "action {} player={}",
            arena.action_name(a),
            arena.action_owner(a).number()
        )
        .unwrap();
    }
    for s in arena.states() {
        for &(a, dst) in arena.enabled(s) {
            writeln!(
                out,
                "trans {} {} {}",
                arena.state_name(s),
                arena.action_name(a),
                arena.state_name(dst)
            )
            .unwrap();
        }
    }
    for sym in 0..obs.num_symbols() {
        let sym = ObsId(sym as u32);
        let members: Vec<&str> = arena
            .states()
            .filter(|&s| obs.class_of(s) == Some(sym))
            .map(|s| arena.state_name(s))
            .collect();
        if !members.is_empty() {
            writeln!(out, "obsclass {} {}", obs.symbol_name(sym), members.join(" ")).unwrap();
        }
    }
    for &(src, act, dst, sym) in obs.explicit_triples() {
        writeln!(
            out,
            "obs {} {} {} {}",
            arena.state_name(src),
            arena.action_name(act),
            arena.state_name(dst),
            obs.symbol_name(sym)
        )
        .unwrap();
    }
    out
}

/// Prints a DFA in canonical order.
pub fn print_dfa(dfa: &SecretDfa) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for q in dfa.dstates() {
        if dfa.is_accepting(q) {
            writeln!(out, "dstate {} accepting", dfa.dstate_name(q)).unwrap();
        } else {
            writeln!(out, "dstate {}", dfa.dstate_name(q)).unwrap();
        }
    }
    writeln!(out, "init {}", dfa.dstate_name(dfa.initial())).unwrap();
    for e in dfa.edges() {
        writeln!(
            out,
            "edge {} \"{}\" {}",
            dfa.dstate_name(e.from),
            e.guard,
            dfa.dstate_name(e.to)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1, EXAMPLE1_ARENA, EXAMPLE1_DFA};

    #[test]
    fn example1_parses() {
        let (arena, obs) = parse_arena(EXAMPLE1_ARENA).unwrap();
        assert_eq!(arena.num_states(), 7);
        assert_eq!(obs.num_symbols(), 4);
        assert_eq!(arena.state_name(arena.initial()), "0");
    }

    #[test]
    fn ownership_mismatch_has_span() {
        let text = "\
atoms x
state 0 owner=1 label=-
state 1 owner=2 label=-
init 0
action a1 player=1
action b1 player=2
trans 0 b1 1
";
        let err = parse_arena(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Ownership);
        assert_eq!(err.span.line, 7);
        assert_eq!(err.span.column, 9);
    }

    #[test]
    fn empty_file_is_missing_init() {
        let err = parse_arena("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingInit);
    }

    #[test]
    fn duplicate_transition_rejected() {
        let text = "\
state 0 owner=1 label=-
init 0
action a player=1
trans 0 a 0
trans 0 a 0
";
        let err = parse_arena(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Duplicate);
        assert_eq!(err.span.line, 5);
    }

    #[test]
    fn undeclared_state_rejected() {
        let text = "\
state 0 owner=1 label=-
init 0
action a player=1
trans 0 a missing
";
        let err = parse_arena(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UndeclaredId);
        assert!(err.message.contains("missing"));
    }

    #[test]
    fn state_without_action_rejected_unless_completed() {
        let text = "\
state 0 owner=1 label=-
state 1 owner=1 label=-
init 0
action a player=1
trans 0 a 1
obsclass O 0 1
";
        let err = parse_arena(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Invalid);
        assert!(err.message.contains("without enabled action"));

        let opts = ArenaParseOptions { complete_sinks: true };
        let (arena, _) = parse_arena_with("<input>", text, &opts).unwrap();
        let s1 = arena.state_id("1").unwrap();
        assert_eq!(arena.enabled(s1).len(), 1);
        assert_eq!(arena.enabled(s1)[0].1, s1);
    }

    #[test]
    fn dfa_parses_fig3_shape() {
        let dfa = parse_dfa(EXAMPLE1_DFA).unwrap();
        assert_eq!(dfa.num_dstates(), 2);
        let q1 = dfa.dstate_id("q1").unwrap();
        assert!(dfa.is_accepting(q1));
        assert_eq!(dfa.accepting_flags().iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn overlapping_guards_rejected() {
        let text = "\
dstate q0
dstate q1 accepting
init q0
edge q0 \"h1\" q1
edge q0 \"true\" q0
edge q1 \"true\" q1
";
        let err = parse_dfa(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Dfa);
        assert!(err.message.contains("Nondeterministic")
            || err.message.contains("nondeterministic"));
    }

    #[test]
    fn incomplete_dfa_rejected() {
        let text = "\
dstate q0
dstate q1 accepting
init q0
edge q0 \"h1\" q1
edge q1 \"true\" q1
";
        let err = parse_dfa(text).unwrap_err();
        assert!(err.message.contains("no outgoing guard"));
    }

    #[test]
    fn non_absorbing_accepting_rejected() {
        let text = "\
dstate q0
dstate q1 accepting
init q0
edge q0 \"true\" q1
edge q1 \"h1\" q0
edge q1 \"!h1\" q1
";
        let err = parse_dfa(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Dfa);
        assert!(err.message.contains("not absorbing"));
    }

    #[test]
    fn guard_error_position_points_into_line() {
        let text = "\
dstate q0
init q0
edge q0 \"h1 |\" q0
";
        let err = parse_dfa(text).unwrap_err();
        assert_eq!(err.span.line, 3);
        assert!(err.span.column > 9);
    }

    #[test]
    fn arena_round_trip() {
        let ex = example1();
        let printed = print_arena(&ex.arena, &ex.obs);
        let (arena2, obs2) = parse_arena(&printed).unwrap();
        assert_eq!(ex.arena, arena2);
        assert_eq!(ex.obs, obs2);
    }

    #[test]
    fn dfa_round_trip() {
        let dfa = parse_dfa(EXAMPLE1_DFA).unwrap();
        let printed = print_dfa(&dfa);
        let dfa2 = parse_dfa(&printed).unwrap();
        assert_eq!(dfa, dfa2);
    }

    #[test]
    fn explicit_triples_override_classes() {
        let text = "\
state 0 owner=1 label=-
state 1 owner=1 label=-
init 0
action a player=1
action b player=1
trans 0 a 1
trans 0 b 1
trans 1 a 1
obsclass O 0 1
obs 0 a 1 Special
";
        let (arena, obs) = parse_arena(text).unwrap();
        let s0 = arena.state_id("0").unwrap();
        let a = arena.action_id("a").unwrap();
        let b = arena.action_id("b").unwrap();
        let special = obs.symbol_id("Special").unwrap();
        let o = obs.symbol_id("O").unwrap();
        assert_eq!(obs.observe(&arena, s0, a), Some(special));
        assert_eq!(obs.observe(&arena, s0, b), Some(o));
    }
}
