//! Core game model: arenas, secret DFAs, plays, observations and strategies.
//!
//! Everything here is immutable after construction/validation and shared by
//! the product builder, the solver and the simulator. Operations are pure.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on atomic propositions. DFA completeness is validated by
/// enumerating all `2^|atoms|` letters, so the alphabet must stay small.
pub const MAX_ATOMS: usize = 16;

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
        )]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}

id_type!(
    /// Index of an arena state.
    StateId
);
id_type!(
    /// Index of an action (shared table for both players).
    ActionId
);
id_type!(
    /// Index of an atomic proposition.
    AtomId
);
id_type!(
    /// Index of a DFA state.
    DfaStateId
);
id_type!(
    /// Index of an observation symbol in `Ω`.
    ObsId
);
id_type!(
    /// Index of a vertex of the belief-augmented product game.
    VertexId
);
id_type!(
    /// Index of an interned belief.
    BeliefId
);

/// The two players of the turn-based game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Player> {
        match n {
            1 => Some(Player::P1),
            2 => Some(Player::P2),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.number())
    }
}

/// A letter of the DFA alphabet `2^AP`, stored as a bitmask over atom ids.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Letter(pub u64);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn singleton(atom: AtomId) -> Letter {
        Letter(1 << atom.0)
    }

    pub fn contains(self, atom: AtomId) -> bool {
        self.0 & (1 << atom.0) != 0
    }

    pub fn insert(&mut self, atom: AtomId) {
        self.0 |= 1 << atom.0;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Atoms present in the letter, ascending.
    pub fn atoms(self) -> impl Iterator<Item = AtomId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(AtomId(i))
            }
        })
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Letter({:#b})", self.0)
    }
}

// ---------------------------------------------------------------------------
// Game arena
// ---------------------------------------------------------------------------

/// Turn-based deterministic two-player game graph with labeled states.
///
/// Transitions are partial: an action may be disabled at a state. Absorbing
/// states are modeled with explicit self-loops, never by missing successors.
#[derive(Debug, Clone, PartialEq)]
pub struct GameArena {
    state_names: Vec<String>,
    state_index: HashMap<String, StateId>,
    owners: Vec<Player>,
    labels: Vec<Letter>,
    action_names: Vec<String>,
    action_index: HashMap<String, ActionId>,
    action_owners: Vec<Player>,
    atom_names: Vec<String>,
    atom_index: HashMap<String, AtomId>,
    initial: StateId,
    /// Outgoing edges per state, sorted by action id.
    succ: Vec<Vec<(ActionId, StateId)>>,
}

impl GameArena {
    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_actions(&self) -> usize {
        self.action_names.len()
    }

    pub fn num_atoms(&self) -> usize {
        self.atom_names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_names.len() as u32).map(StateId)
    }

    pub fn actions(&self) -> impl Iterator<Item = ActionId> {
        (0..self.action_names.len() as u32).map(ActionId)
    }

    pub fn owner(&self, s: StateId) -> Player {
        self.owners[s.index()]
    }

    pub fn action_owner(&self, a: ActionId) -> Player {
        self.action_owners[a.index()]
    }

    pub fn label(&self, s: StateId) -> Letter {
        self.labels[s.index()]
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s.index()]
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.action_names[a.index()]
    }

    pub fn atom_name(&self, a: AtomId) -> &str {
        &self.atom_names[a.index()]
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atom_names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atom_index.get(name).copied()
    }

    /// Outgoing edges of `s`, sorted by action id.
    pub fn enabled(&self, s: StateId) -> &[(ActionId, StateId)] {
        &self.succ[s.index()]
    }

    /// Successor under a single (state, action) pair, if the action is enabled.
    pub fn step(&self, s: StateId, a: ActionId) -> Option<StateId> {
        self.succ[s.index()]
            .iter()
            .find(|&&(act, _)| act == a)
            .map(|&(_, dst)| dst)
    }

    /// Renders a letter as a set of atom names, e.g. `{h1,h2}`.
    pub fn letter_to_string(&self, letter: Letter) -> String {
        let names: Vec<&str> = letter.atoms().map(|a| self.atom_name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Builder for [`GameArena`]. Permissive on purpose: structural violations
/// (ownership mismatches, duplicate transitions, dead ends) are representable
/// and reported by [`validate_arena`] rather than rejected here, so that
/// callers that need diagnostics-as-data can produce them.
#[derive(Debug, Default)]
pub struct ArenaBuilder {
    state_names: Vec<String>,
    state_index: HashMap<String, StateId>,
    owners: Vec<Player>,
    labels: Vec<Letter>,
    action_names: Vec<String>,
    action_index: HashMap<String, ActionId>,
    action_owners: Vec<Player>,
    atom_names: Vec<String>,
    atom_index: HashMap<String, AtomId>,
    initial: Option<StateId>,
    succ: Vec<Vec<(ActionId, StateId)>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArenaBuildError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate action `{0}`")]
    DuplicateAction(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("too many atoms: {0} exceeds the maximum of {MAX_ATOMS}")]
    TooManyAtoms(usize),
    #[error("no initial state declared")]
    MissingInitial,
}

impl ArenaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_atom(&mut self, name: &str) -> Result<AtomId, ArenaBuildError> {
        if self.atom_index.contains_key(name) {
            return Err(ArenaBuildError::DuplicateAtom(name.to_string()));
        }
        if self.atom_names.len() >= MAX_ATOMS {
            return Err(ArenaBuildError::TooManyAtoms(self.atom_names.len() + 1));
        }
        let id = AtomId(self.atom_names.len() as u32);
        self.atom_names.push(name.to_string());
        self.atom_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_state(
        &mut self,
        name: &str,
        owner: Player,
        label: Letter,
    ) -> Result<StateId, ArenaBuildError> {
        if self.state_index.contains_key(name) {
            return Err(ArenaBuildError::DuplicateState(name.to_string()));
        }
        let id = StateId(self.state_names.len() as u32);
        self.state_names.push(name.to_string());
        self.state_index.insert(name.to_string(), id);
        self.owners.push(owner);
        self.labels.push(label);
        self.succ.push(Vec::new());
        Ok(id)
    }

    pub fn add_action(&mut self, name: &str, owner: Player) -> Result<ActionId, ArenaBuildError> {
        if self.action_index.contains_key(name) {
            return Err(ArenaBuildError::DuplicateAction(name.to_string()));
        }
        let id = ActionId(self.action_names.len() as u32);
        self.action_names.push(name.to_string());
        self.action_index.insert(name.to_string(), id);
        self.action_owners.push(owner);
        Ok(id)
    }

    /// Inserts a transition. Duplicates and ownership mismatches are accepted
    /// here and surface in the validation report.
    pub fn add_transition(&mut self, src: StateId, action: ActionId, dst: StateId) {
        self.succ[src.index()].push((action, dst));
    }

    pub fn set_initial(&mut self, s: StateId) {
        self.initial = Some(s);
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atom_index.get(name).copied()
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    pub fn has_outgoing(&self, s: StateId) -> bool {
        !self.succ[s.index()].is_empty()
    }

    pub fn build(mut self) -> Result<GameArena, ArenaBuildError> {
        let initial = self.initial.ok_or(ArenaBuildError::MissingInitial)?;
        for edges in &mut self.succ {
            edges.sort_by_key(|&(a, d)| (a, d));
        }
        Ok(GameArena {
            state_names: self.state_names,
            state_index: self.state_index,
            owners: self.owners,
            labels: self.labels,
            action_names: self.action_names,
            action_index: self.action_index,
            action_owners: self.action_owners,
            atom_names: self.atom_names,
            atom_index: self.atom_index,
            initial,
            succ: self.succ,
        })
    }
}

// ---------------------------------------------------------------------------
// Arena validation
// ---------------------------------------------------------------------------

/// A single invariant violation found by [`validate_arena`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArenaViolation {
    /// Transition whose action is owned by the other player.
    OwnershipMismatch { state: StateId, action: ActionId },
    /// Two transitions from the same (state, action) pair.
    Nondeterministic { state: StateId, action: ActionId },
    /// State with no enabled owner-consistent action.
    NoEnabledAction { state: StateId },
    /// State label mentions an atom index outside the declared atom set.
    UnknownAtomInLabel { state: StateId },
}

/// Validation outcome; violations are data, not errors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<ArenaViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, arena: &GameArena) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let line = match v {
                ArenaViolation::OwnershipMismatch { state, action } => format!(
                    "ownership mismatch: action `{}` ({}) used at state `{}` ({})",
                    arena.action_name(*action),
                    arena.action_owner(*action),
                    arena.state_name(*state),
                    arena.owner(*state),
                ),
                ArenaViolation::Nondeterministic { state, action } => format!(
                    "nondeterministic transition: state `{}` has multiple successors under `{}`",
                    arena.state_name(*state),
                    arena.action_name(*action),
                ),
                ArenaViolation::NoEnabledAction { state } => format!(
                    "state without enabled action: `{}`",
                    arena.state_name(*state)
                ),
                ArenaViolation::UnknownAtomInLabel { state } => format!(
                    "label of state `{}` references an undeclared atom",
                    arena.state_name(*state)
                ),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Checks all arena invariants and reports every violation found.
pub fn validate_arena(arena: &GameArena) -> ValidationReport {
    let mut report = ValidationReport::default();
    let atom_mask = if arena.num_atoms() >= 64 {
        u64::MAX
    } else {
        (1u64 << arena.num_atoms()) - 1
    };
    for s in arena.states() {
        let owner = arena.owner(s);
        let edges = arena.enabled(s);
        let mut enabled_own = 0usize;
        for (i, &(a, _)) in edges.iter().enumerate() {
            if arena.action_owner(a) != owner {
                report
                    .violations
                    .push(ArenaViolation::OwnershipMismatch { state: s, action: a });
            } else {
                enabled_own += 1;
            }
            if i > 0 && edges[i - 1].0 == a {
                // sorted, so duplicates are adjacent; report once per pair
                if i == 1 || edges[i - 2].0 != a {
                    report
                        .violations
                        .push(ArenaViolation::Nondeterministic { state: s, action: a });
                }
            }
        }
        if enabled_own == 0 {
            report
                .violations
                .push(ArenaViolation::NoEnabledAction { state: s });
        }
        if arena.label(s).0 & !atom_mask != 0 {
            report
                .violations
                .push(ArenaViolation::UnknownAtomInLabel { state: s });
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Plays
// ---------------------------------------------------------------------------

/// A finite alternating sequence `s0 a0 s1 a1 … sn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Play {
    pub states: Vec<StateId>,
    pub actions: Vec<ActionId>,
}

impl Play {
    pub fn new(initial: StateId) -> Play {
        Play {
            states: vec![initial],
            actions: Vec::new(),
        }
    }

    pub fn push(&mut self, action: ActionId, state: StateId) {
        self.actions.push(action);
        self.states.push(state);
    }

    /// Number of transitions taken.
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn last_state(&self) -> StateId {
        *self.states.last().expect("play has at least one state")
    }

    pub fn to_text(&self, arena: &GameArena) -> String {
        let mut parts = vec![arena.state_name(self.states[0]).to_string()];
        for (i, &a) in self.actions.iter().enumerate() {
            parts.push(arena.action_name(a).to_string());
            parts.push(arena.state_name(self.states[i + 1]).to_string());
        }
        parts.join(" ")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlayError {
    #[error("play has no states")]
    Empty,
    #[error("state/action counts do not alternate (|states| must be |actions|+1)")]
    Malformed,
    #[error("transition mismatch at step {index}: no such transition in the arena")]
    TransitionMismatch { index: usize },
    #[error("ownership mismatch at step {index}: action not owned by the state's player")]
    OwnershipMismatch { index: usize },
    #[error("unknown token `{token}` in play text")]
    UnknownToken { token: String },
    #[error("play does not start in a declared state")]
    BadStart,
}

/// Checks that a play respects the arena's transition and ownership structure.
pub fn validate_play(arena: &GameArena, play: &Play) -> Result<(), PlayError> {
    if play.states.is_empty() {
        return Err(PlayError::Empty);
    }
    if play.states.len() != play.actions.len() + 1 {
        return Err(PlayError::Malformed);
    }
    for i in 0..play.actions.len() {
        let s = play.states[i];
        let a = play.actions[i];
        if arena.action_owner(a) != arena.owner(s) {
            return Err(PlayError::OwnershipMismatch { index: i });
        }
        match arena.step(s, a) {
            Some(dst) if dst == play.states[i + 1] => {}
            _ => return Err(PlayError::TransitionMismatch { index: i }),
        }
    }
    Ok(())
}

/// Parses `s0 a0 s1 a1 … sn` from whitespace-separated names and validates it.
pub fn parse_play(arena: &GameArena, text: &str) -> Result<Play, PlayError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(PlayError::Empty);
    }
    let first = arena.state_id(tokens[0]).ok_or(PlayError::BadStart)?;
    let mut play = Play::new(first);
    let mut i = 1;
    while i < tokens.len() {
        let action = arena
            .action_id(tokens[i])
            .ok_or_else(|| PlayError::UnknownToken {
                token: tokens[i].to_string(),
            })?;
        let state_tok = tokens.get(i + 1).ok_or(PlayError::Malformed)?;
        let state = arena
            .state_id(state_tok)
            .ok_or_else(|| PlayError::UnknownToken {
                token: state_tok.to_string(),
            })?;
        play.push(action, state);
        i += 2;
    }
    validate_play(arena, &play)?;
    Ok(play)
}

/// `L(ρ) = L(s0)L(s1)…L(sn)`: the label of every state in order.
pub fn play_labels(arena: &GameArena, play: &Play) -> Result<Vec<Letter>, PlayError> {
    validate_play(arena, play)?;
    Ok(play.states.iter().map(|&s| arena.label(s)).collect())
}

// ---------------------------------------------------------------------------
// Secret DFA
// ---------------------------------------------------------------------------

use crate::guard::Guard;

/// One guarded edge of the DFA, kept for serialization and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DfaEdge {
    pub from: DfaStateId,
    pub to: DfaStateId,
    pub guard: Guard,
}

/// Complete, deterministic finite automaton over letters `2^atoms`, with
/// absorbing accepting states. The guarded edge list is compiled into a dense
/// transition table once, at load time, by enumerating every letter.
#[derive(Debug, Clone, PartialEq)]
pub struct SecretDfa {
    dstate_names: Vec<String>,
    dstate_index: HashMap<String, DfaStateId>,
    initial: DfaStateId,
    accepting: Vec<bool>,
    edges: Vec<DfaEdge>,
    atoms: Vec<String>,
    atom_index: HashMap<String, AtomId>,
    /// `table[q << num_atoms | letter]`, filled by compilation.
    table: Vec<DfaStateId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DfaError {
    #[error("duplicate DFA state `{0}`")]
    DuplicateState(String),
    #[error("unknown DFA state `{0}`")]
    UnknownState(String),
    #[error("no initial DFA state declared")]
    MissingInitial,
    #[error("too many atoms: {0} exceeds the maximum of {MAX_ATOMS}")]
    TooManyAtoms(usize),
    #[error("guard atom `{0}` is not declared in the arena's atom set")]
    UnknownAtom(String),
    #[error("nondeterministic guards: state `{state}` has {count} outgoing guards true on letter {letter}")]
    Nondeterministic {
        state: String,
        letter: String,
        count: usize,
    },
    #[error("incomplete DFA: state `{state}` has no outgoing guard true on letter {letter}")]
    Incomplete { state: String, letter: String },
    #[error("accepting state `{state}` is not absorbing: letter {letter} leaves it")]
    NonAbsorbingAccepting { state: String, letter: String },
}

impl SecretDfa {
    /// Compiles a guarded edge list into a validated DFA over the given atom
    /// table. Rejects nondeterminism, incompleteness and non-absorbing
    /// accepting states by enumerating all letters.
    pub fn compile(
        dstate_names: Vec<String>,
        initial_name: &str,
        accepting_names: &[String],
        edges: Vec<(String, String, Guard)>,
        atoms: Vec<String>,
    ) -> Result<SecretDfa, DfaError> {
        if atoms.len() > MAX_ATOMS {
            return Err(DfaError::TooManyAtoms(atoms.len()));
        }
        let mut dstate_index = HashMap::new();
        for (i, name) in dstate_names.iter().enumerate() {
            if dstate_index
                .insert(name.clone(), DfaStateId(i as u32))
                .is_some()
            {
                return Err(DfaError::DuplicateState(name.clone()));
            }
        }
        let lookup = |name: &str| -> Result<DfaStateId, DfaError> {
            dstate_index
                .get(name)
                .copied()
                .ok_or_else(|| DfaError::UnknownState(name.to_string()))
        };
        let initial = lookup(initial_name)?;
        let mut accepting = vec![false; dstate_names.len()];
        for name in accepting_names {
            accepting[lookup(name)?.index()] = true;
        }
        let mut atom_index = HashMap::new();
        for (i, a) in atoms.iter().enumerate() {
            atom_index.insert(a.clone(), AtomId(i as u32));
        }
        let mut typed_edges = Vec::with_capacity(edges.len());
        for (from, to, guard) in edges {
            for atom in guard.atoms() {
                if !atom_index.contains_key(atom) {
                    return Err(DfaError::UnknownAtom(atom.to_string()));
                }
            }
            typed_edges.push(DfaEdge {
                from: lookup(&from)?,
                to: lookup(&to)?,
                guard,
            });
        }

        let n_letters = 1usize << atoms.len();
        let mut table = vec![DfaStateId(0); dstate_names.len() * n_letters];
        let letter_str = |letter: u64| {
            let names: Vec<&str> = (0..atoms.len())
                .filter(|&i| letter & (1 << i) != 0)
                .map(|i| atoms[i].as_str())
                .collect();
            format!("{{{}}}", names.join(","))
        };
        for q in 0..dstate_names.len() {
            for letter in 0..n_letters as u64 {
                let truth =
                    |name: &str| -> bool { atom_index.get(name).is_some_and(|a| letter & (1 << a.0) != 0) };
                let matching: Vec<&DfaEdge> = typed_edges
                    .iter()
                    .filter(|e| e.from.index() == q && e.guard.eval(&truth))
                    .collect();
                match matching.len() {
                    0 => {
                        return Err(DfaError::Incomplete {
                            state: dstate_names[q].clone(),
                            letter: letter_str(letter),
                        })
                    }
                    1 => {}
                    n => {
                        return Err(DfaError::Nondeterministic {
                            state: dstate_names[q].clone(),
                            letter: letter_str(letter),
                            count: n,
                        })
                    }
                }
                let target = matching[0].to;
                if accepting[q] && target.index() != q {
                    return Err(DfaError::NonAbsorbingAccepting {
                        state: dstate_names[q].clone(),
                        letter: letter_str(letter),
                    });
                }
                table[(q << atoms.len()) | letter as usize] = target;
            }
        }

        Ok(SecretDfa {
            dstate_names,
            dstate_index,
            initial,
            accepting,
            edges: typed_edges,
            atoms,
            atom_index,
            table,
        })
    }

    /// Re-expresses the DFA over an arena's atom table, so that arena letters
    /// index the transition table directly. Fails if a guard uses an atom the
    /// arena does not declare.
    pub fn link(&self, arena: &GameArena) -> Result<SecretDfa, DfaError> {
        if self.atoms == arena.atom_names {
            return Ok(self.clone());
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (
                    self.dstate_names[e.from.index()].clone(),
                    self.dstate_names[e.to.index()].clone(),
                    e.guard.clone(),
                )
            })
            .collect();
        let accepting: Vec<String> = self
            .accepting
            .iter()
            .enumerate()
            .filter(|&(_, &acc)| acc)
            .map(|(i, _)| self.dstate_names[i].clone())
            .collect();
        SecretDfa::compile(
            self.dstate_names.clone(),
            &self.dstate_names[self.initial.index()],
            &accepting,
            edges,
            arena.atom_names.clone(),
        )
    }

    /// True when the DFA's atom table matches the arena's, i.e. [`link`] was
    /// applied (or was never needed).
    pub fn is_linked(&self, arena: &GameArena) -> bool {
        self.atoms == arena.atom_names
    }

    pub fn num_dstates(&self) -> usize {
        self.dstate_names.len()
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn initial(&self) -> DfaStateId {
        self.initial
    }

    pub fn is_accepting(&self, q: DfaStateId) -> bool {
        self.accepting[q.index()]
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    pub fn dstate_name(&self, q: DfaStateId) -> &str {
        &self.dstate_names[q.index()]
    }

    pub fn dstate_id(&self, name: &str) -> Option<DfaStateId> {
        self.dstate_index.get(name).copied()
    }

    pub fn dstates(&self) -> impl Iterator<Item = DfaStateId> {
        (0..self.dstate_names.len() as u32).map(DfaStateId)
    }

    pub fn edges(&self) -> &[DfaEdge] {
        &self.edges
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    #[inline]
    pub fn step(&self, q: DfaStateId, letter: Letter) -> DfaStateId {
        self.table[(q.index() << self.atoms.len()) | letter.0 as usize]
    }

    /// Extended transition function applied from a given state.
    pub fn run_from(&self, q: DfaStateId, word: &[Letter]) -> DfaStateId {
        word.iter().fold(q, |q, &l| self.step(q, l))
    }
}

/// Extended transition function applied from the initial state.
pub fn dfa_run(dfa: &SecretDfa, word: &[Letter]) -> DfaStateId {
    dfa.run_from(dfa.initial(), word)
}

/// A play is winning for P1 iff its label word is accepted by the DFA.
pub fn is_winning_play(
    arena: &GameArena,
    dfa: &SecretDfa,
    play: &Play,
) -> Result<bool, PlayError> {
    let labels = play_labels(arena, play)?;
    Ok(dfa.is_accepting(dfa_run(dfa, &labels)))
}

// ---------------------------------------------------------------------------
// Observation map
// ---------------------------------------------------------------------------

/// The attacker's observation function `O : S×A×S → Ω`, total on defined
/// transitions. Internally fully expanded, one symbol per arena edge; an
/// optional destination-class partition is retained as sugar for
/// serialization and for class-based initial beliefs.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationMap {
    symbol_names: Vec<String>,
    symbol_index: HashMap<String, ObsId>,
    /// Parallel to `GameArena::enabled(s)`: symbol of each outgoing edge.
    rule: Vec<Vec<ObsId>>,
    /// Destination-class sugar: the class a state belongs to, if any.
    state_class: Vec<Option<ObsId>>,
    /// Explicit `(src, action, dst, symbol)` overrides, as declared.
    explicit: Vec<(StateId, ActionId, StateId, ObsId)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObsError {
    #[error("state `{0}` is covered by more than one observation class")]
    DuplicateClass(String),
    #[error("transition `{src} {action} {dst}` has no observation symbol")]
    Uncovered {
        src: String,
        action: String,
        dst: String,
    },
    #[error("explicit observation references transition `{src} {action}` that does not exist")]
    NoSuchTransition { src: String, action: String },
    #[error("duplicate explicit observation for transition `{src} {action}`")]
    DuplicateExplicit { src: String, action: String },
}

/// Builder for [`ObservationMap`]; resolves class sugar and explicit triples
/// against a fixed arena.
pub struct ObsBuilder<'a> {
    arena: &'a GameArena,
    symbol_names: Vec<String>,
    symbol_index: HashMap<String, ObsId>,
    state_class: Vec<Option<ObsId>>,
    explicit: Vec<(StateId, ActionId, StateId, ObsId)>,
}

impl<'a> ObsBuilder<'a> {
    pub fn new(arena: &'a GameArena) -> Self {
        ObsBuilder {
            arena,
            symbol_names: Vec::new(),
            symbol_index: HashMap::new(),
            state_class: vec![None; arena.num_states()],
            explicit: Vec::new(),
        }
    }

    pub fn intern_symbol(&mut self, name: &str) -> ObsId {
        if let Some(&id) = self.symbol_index.get(name) {
            return id;
        }
        let id = ObsId(self.symbol_names.len() as u32);
        self.symbol_names.push(name.to_string());
        self.symbol_index.insert(name.to_string(), id);
        id
    }

    /// Declares a destination class: observing any transition into one of
    /// `states` yields `symbol`.
    pub fn add_class(&mut self, symbol: &str, states: &[StateId]) -> Result<(), ObsError> {
        let id = self.intern_symbol(symbol);
        for &s in states {
            if self.state_class[s.index()].is_some() {
                return Err(ObsError::DuplicateClass(
                    self.arena.state_name(s).to_string(),
                ));
            }
            self.state_class[s.index()] = Some(id);
        }
        Ok(())
    }

    /// Declares an explicit per-transition symbol, overriding any class.
    pub fn add_triple(
        &mut self,
        src: StateId,
        action: ActionId,
        dst: StateId,
        symbol: &str,
    ) -> Result<(), ObsError> {
        if self.arena.step(src, action) != Some(dst) {
            return Err(ObsError::NoSuchTransition {
                src: self.arena.state_name(src).to_string(),
                action: self.arena.action_name(action).to_string(),
            });
        }
        if self
            .explicit
            .iter()
            .any(|&(s, a, _, _)| s == src && a == action)
        {
            return Err(ObsError::DuplicateExplicit {
                src: self.arena.state_name(src).to_string(),
                action: self.arena.action_name(action).to_string(),
            });
        }
        let id = self.intern_symbol(symbol);
        self.explicit.push((src, action, dst, id));
        Ok(())
    }

    pub fn finish(self) -> Result<ObservationMap, ObsError> {
        let arena = self.arena;
        let mut rule = Vec::with_capacity(arena.num_states());
        for s in arena.states() {
            let mut row = Vec::with_capacity(arena.enabled(s).len());
            for &(a, dst) in arena.enabled(s) {
                let explicit = self
                    .explicit
                    .iter()
                    .find(|&&(es, ea, _, _)| es == s && ea == a)
                    .map(|&(_, _, _, sym)| sym);
                let sym = match explicit.or(self.state_class[dst.index()]) {
                    Some(sym) => sym,
                    None => {
                        return Err(ObsError::Uncovered {
                            src: arena.state_name(s).to_string(),
                            action: arena.action_name(a).to_string(),
                            dst: arena.state_name(dst).to_string(),
                        })
                    }
                };
                row.push(sym);
            }
            rule.push(row);
        }
        Ok(ObservationMap {
            symbol_names: self.symbol_names,
            symbol_index: self.symbol_index,
            rule,
            state_class: self.state_class,
            explicit: self.explicit,
        })
    }
}

impl ObservationMap {
    pub fn num_symbols(&self) -> usize {
        self.symbol_names.len()
    }

    pub fn symbol_name(&self, o: ObsId) -> &str {
        &self.symbol_names[o.index()]
    }

    pub fn symbol_id(&self, name: &str) -> Option<ObsId> {
        self.symbol_index.get(name).copied()
    }

    /// Symbol of the `i`-th outgoing edge of `s` (aligned with
    /// `GameArena::enabled`).
    #[inline]
    pub fn edge_symbol(&self, s: StateId, edge_idx: usize) -> ObsId {
        self.rule[s.index()][edge_idx]
    }

    /// `O(s, a, s')` for a defined transition.
    pub fn observe(&self, arena: &GameArena, s: StateId, a: ActionId) -> Option<ObsId> {
        arena
            .enabled(s)
            .iter()
            .position(|&(act, _)| act == a)
            .map(|i| self.rule[s.index()][i])
    }

    /// Destination class of a state, when class sugar covers it.
    pub fn class_of(&self, s: StateId) -> Option<ObsId> {
        self.state_class[s.index()]
    }

    /// States belonging to the same class as `s` (including `s`), when
    /// class sugar covers `s`.
    pub fn class_members(&self, s: StateId) -> Option<Vec<StateId>> {
        let class = self.state_class[s.index()]?;
        Some(
            (0..self.state_class.len() as u32)
                .map(StateId)
                .filter(|t| self.state_class[t.index()] == Some(class))
                .collect(),
        )
    }

    pub fn classes(&self) -> &[Option<ObsId>] {
        &self.state_class
    }

    pub fn explicit_triples(&self) -> &[(StateId, ActionId, StateId, ObsId)] {
        &self.explicit
    }
}

/// `O(ρ)`: one symbol per transition, in order. The initial state is common
/// knowledge and contributes no symbol.
pub fn observe_play(
    arena: &GameArena,
    obs: &ObservationMap,
    play: &Play,
) -> Result<Vec<ObsId>, PlayError> {
    validate_play(arena, play)?;
    let mut out = Vec::with_capacity(play.len());
    for i in 0..play.actions.len() {
        let sym = obs
            .observe(arena, play.states[i], play.actions[i])
            .expect("validated play uses defined transitions");
        out.push(sym);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Verdicts and strategies
// ---------------------------------------------------------------------------

/// Classification of a finite play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlayVerdict {
    /// Winning, and some observation-equivalent play is non-winning.
    #[serde(rename = "opaque-winning")]
    OpaqueWinning,
    /// Winning, and every observation-equivalent play is winning.
    #[serde(rename = "revealing-winning")]
    RevealingWinning,
    /// Not winning (losing plays are not further subdivided).
    #[serde(rename = "non-winning")]
    NonWinning,
}

impl fmt::Display for PlayVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlayVerdict::OpaqueWinning => "opaque-winning",
            PlayVerdict::RevealingWinning => "revealing-winning",
            PlayVerdict::NonWinning => "non-winning",
        };
        f.write_str(s)
    }
}

/// Classification of a product vertex by winning-region membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StateVerdict {
    /// In `Win1_opaque`: P1 can win while keeping the secret opaque.
    #[serde(rename = "opaque-winning")]
    OpaqueWinnable,
    /// In `Win1 \ Win1_opaque`: P1 can win, but every win reveals the secret.
    #[serde(rename = "win-only-by-revealing")]
    WinOnlyByRevealing,
    /// Outside `Win1`: P2 can prevent the temporal goal.
    #[serde(rename = "not-surely-winnable")]
    NotSurelyWinnable,
}

impl fmt::Display for StateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StateVerdict::OpaqueWinnable => "opaque-winning",
            StateVerdict::WinOnlyByRevealing => "win-only-by-revealing",
            StateVerdict::NotSurelyWinnable => "not-surely-winnable",
        };
        f.write_str(s)
    }
}

/// Memoryless strategy on the product game: a choice of enabled action at
/// each covered vertex.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MemorylessStrategy {
    choices: HashMap<VertexId, ActionId>,
}

impl MemorylessStrategy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: VertexId) -> Option<ActionId> {
        self.choices.get(&v).copied()
    }

    pub fn set(&mut self, v: VertexId, a: ActionId) {
        self.choices.insert(v, a);
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, ActionId)> + '_ {
        self.choices.iter().map(|(&v, &a)| (v, a))
    }
}

impl FromIterator<(VertexId, ActionId)> for MemorylessStrategy {
    fn from_iter<T: IntoIterator<Item = (VertexId, ActionId)>>(iter: T) -> Self {
        MemorylessStrategy {
            choices: iter.into_iter().collect(),
        }
    }
}

/// Tolerance for probability mass checks on randomized strategies.
pub const DIST_TOLERANCE: f64 = 1e-9;

/// A strategy profile entry for the simulator.
#[derive(Debug, Clone)]
pub enum Strategy {
    /// Deterministic memoryless choice per product vertex.
    Memoryless(MemorylessStrategy),
    /// Uniform distribution over the enabled actions at each vertex.
    Uniform,
    /// Stationary randomized strategy: an explicit distribution per vertex.
    /// Support must be enabled and each distribution must sum to 1 within
    /// [`DIST_TOLERANCE`].
    Stochastic(HashMap<VertexId, Vec<(ActionId, f64)>>),
}

impl Strategy {
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Strategy::Memoryless(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::example1;

    #[test]
    fn example1_arena_is_valid() {
        let ex = example1();
        assert!(validate_arena(&ex.arena).is_valid());
    }

    #[test]
    fn ownership_violation_is_reported() {
        let mut b = ArenaBuilder::new();
        let s0 = b.add_state("s0", Player::P1, Letter::EMPTY).unwrap();
        let s1 = b.add_state("s1", Player::P2, Letter::EMPTY).unwrap();
        let a = b.add_action("a", Player::P1).unwrap();
        let bb = b.add_action("b", Player::P2).unwrap();
        b.add_transition(s0, bb, s1); // P2 action on a P1 state
        b.add_transition(s1, bb, s1);
        b.set_initial(s0);
        let arena = b.build().unwrap();
        let report = validate_arena(&arena);
        assert!(report
            .violations
            .contains(&ArenaViolation::OwnershipMismatch { state: s0, action: bb }));
        // s0 has no owner-consistent action either
        assert!(report
            .violations
            .contains(&ArenaViolation::NoEnabledAction { state: s0 }));
        let _ = a;
    }

    #[test]
    fn missing_self_loop_is_reported() {
        let mut b = ArenaBuilder::new();
        let s0 = b.add_state("s0", Player::P1, Letter::EMPTY).unwrap();
        let s1 = b.add_state("s1", Player::P1, Letter::EMPTY).unwrap();
        let a = b.add_action("a", Player::P1).unwrap();
        b.add_transition(s0, a, s1);
        b.set_initial(s0);
        let arena = b.build().unwrap();
        let report = validate_arena(&arena);
        assert_eq!(
            report.violations,
            vec![ArenaViolation::NoEnabledAction { state: s1 }]
        );
    }

    #[test]
    fn play_labels_of_rho1() {
        let ex = example1();
        let play = parse_play(&ex.arena, "0 a3 4 b1 h2 a1 3").unwrap();
        let labels = play_labels(&ex.arena, &play).unwrap();
        let h2 = ex.arena.atom_id("h2").unwrap();
        assert_eq!(
            labels,
            vec![
                Letter::EMPTY,
                Letter::EMPTY,
                Letter::singleton(h2),
                Letter::EMPTY
            ]
        );
    }

    #[test]
    fn play_labels_single_state() {
        let ex = example1();
        let play = Play::new(ex.arena.initial());
        let labels = play_labels(&ex.arena, &play).unwrap();
        assert_eq!(labels, vec![Letter::EMPTY]);
    }

    #[test]
    fn play_labels_of_rho3_all_empty() {
        let ex = example1();
        let play = parse_play(&ex.arena, "0 a2 1 b2 2 a1 3").unwrap();
        let labels = play_labels(&ex.arena, &play).unwrap();
        assert!(labels.iter().all(|l| l.is_empty()));
    }

    #[test]
    fn dfa_run_examples() {
        let ex = example1();
        let h2 = ex.arena.atom_id("h2").unwrap();
        let q0 = ex.dfa.dstate_id("q0").unwrap();
        let q1 = ex.dfa.dstate_id("q1").unwrap();
        let word = vec![
            Letter::EMPTY,
            Letter::EMPTY,
            Letter::singleton(h2),
            Letter::EMPTY,
        ];
        assert_eq!(dfa_run(&ex.dfa, &word), q1);
        assert_eq!(dfa_run(&ex.dfa, &[]), q0);
        assert_eq!(dfa_run(&ex.dfa, &[Letter::EMPTY; 4]), q0);
    }

    #[test]
    fn winning_plays() {
        let ex = example1();
        let rho1 = parse_play(&ex.arena, "0 a3 4 b1 h2 a1 3").unwrap();
        let rho3 = parse_play(&ex.arena, "0 a2 1 b2 2 a1 3").unwrap();
        assert!(is_winning_play(&ex.arena, &ex.dfa, &rho1).unwrap());
        assert!(!is_winning_play(&ex.arena, &ex.dfa, &rho3).unwrap());
        assert!(!is_winning_play(&ex.arena, &ex.dfa, &Play::new(ex.arena.initial())).unwrap());
    }

    #[test]
    fn observe_play_examples() {
        let ex = example1();
        let o_mid = ex.obs.symbol_id("O_mid").unwrap();
        let o_14 = ex.obs.symbol_id("O_14").unwrap();
        let o_3 = ex.obs.symbol_id("O_3").unwrap();

        let rho1 = parse_play(&ex.arena, "0 a3 4 b1 h2 a1 3").unwrap();
        assert_eq!(
            observe_play(&ex.arena, &ex.obs, &rho1).unwrap(),
            vec![o_14, o_mid, o_3]
        );

        let empty = Play::new(ex.arena.initial());
        assert!(observe_play(&ex.arena, &ex.obs, &empty).unwrap().is_empty());

        let rho2 = parse_play(&ex.arena, "0 a1 h1 b1 2 a1 3").unwrap();
        assert_eq!(
            observe_play(&ex.arena, &ex.obs, &rho2).unwrap(),
            vec![o_mid, o_mid, o_3]
        );
    }

    #[test]
    fn invalid_play_is_rejected() {
        let ex = example1();
        let s0 = ex.arena.state_id("0").unwrap();
        let s3 = ex.arena.state_id("3").unwrap();
        let a1 = ex.arena.action_id("a1").unwrap();
        let mut play = Play::new(s0);
        play.push(a1, s3); // 0 --a1--> 3 does not exist
        assert_eq!(
            validate_play(&ex.arena, &play),
            Err(PlayError::TransitionMismatch { index: 0 })
        );
    }

    #[test]
    fn observation_lengths_match_play_shape() {
        let ex = example1();
        for text in ["0 a3 4 b1 h2 a1 3", "0 a1 h1 b2 h2 a1 3 a1 3", "0"] {
            let play = parse_play(&ex.arena, text).unwrap();
            let labels = play_labels(&ex.arena, &play).unwrap();
            let o = observe_play(&ex.arena, &ex.obs, &play).unwrap();
            assert_eq!(labels.len(), play.states.len());
            assert_eq!(o.len(), play.actions.len());
        }
    }

    #[test]
    fn dfa_run_composes_and_accepting_absorbs() {
        let ex = example1();
        let h1 = ex.arena.atom_id("h1").unwrap();
        let w1 = vec![Letter::EMPTY, Letter::singleton(h1)];
        let w2 = vec![Letter::EMPTY, Letter::singleton(h1), Letter::EMPTY];
        let q_mid = dfa_run(&ex.dfa, &w1);
        let both: Vec<Letter> = w1.iter().chain(w2.iter()).copied().collect();
        assert_eq!(ex.dfa.run_from(q_mid, &w2), dfa_run(&ex.dfa, &both));
        // accepting states never leave F
        assert!(ex.dfa.is_accepting(q_mid));
        for letter in 0..4u64 {
            assert_eq!(ex.dfa.step(q_mid, Letter(letter)), q_mid);
        }
    }
}
