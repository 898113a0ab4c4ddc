//! Boolean guard expressions labeling DFA edges.
//!
//! Grammar (precedence `!` > `&` > `|`, parentheses allowed):
//!
//! ```text
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | '(' or ')' | 'true' | 'false' | atom
//! ```
//!
//! Atoms evaluate to true iff they are present in the letter.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Guard {
    True,
    False,
    Atom(String),
    Not(Box<Guard>),
    And(Box<Guard>, Box<Guard>),
    Or(Box<Guard>, Box<Guard>),
}

impl Guard {
    /// Distinct atoms referenced by the expression.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Guard::True | Guard::False => {}
            Guard::Atom(a) => {
                out.insert(a.as_str());
            }
            Guard::Not(g) => g.collect_atoms(out),
            Guard::And(l, r) | Guard::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluates under a truth assignment for atoms.
    pub fn eval(&self, truth: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Guard::True => true,
            Guard::False => false,
            Guard::Atom(a) => truth(a),
            Guard::Not(g) => !g.eval(truth),
            Guard::And(l, r) => l.eval(truth) && r.eval(truth),
            Guard::Or(l, r) => l.eval(truth) || r.eval(truth),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Guard::Or(..) => 1,
            Guard::And(..) => 2,
            Guard::Not(..) => 3,
            Guard::True | Guard::False | Guard::Atom(_) => 4,
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        let prec = self.precedence();
        // Parenthesize when binding weaker than the context, or when sitting
        // as the right operand of an equal-precedence operator (the parser
        // folds chains to the left, so bare right-nesting would re-associate).
        let parens = prec < parent || (prec == parent && right && prec <= 2);
        if parens {
            f.write_str("(")?;
        }
        match self {
            Guard::True => f.write_str("true")?,
            Guard::False => f.write_str("false")?,
            Guard::Atom(a) => f.write_str(a)?,
            Guard::Not(g) => {
                f.write_str("!")?;
                g.fmt_with(f, 3, false)?;
            }
            Guard::And(l, r) => {
                l.fmt_with(f, 2, false)?;
                f.write_str(" & ")?;
                r.fmt_with(f, 2, true)?;
            }
            Guard::Or(l, r) => {
                l.fmt_with(f, 1, false)?;
                f.write_str(" | ")?;
                r.fmt_with(f, 1, true)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, 0, false)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("guard syntax error at offset {offset}: {message}")]
pub struct GuardParseError {
    /// Byte offset into the guard text.
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> GuardParseError {
        GuardParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn parse_or(&mut self) -> Result<Guard, GuardParseError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let rhs = self.parse_and()?;
            lhs = Guard::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Guard, GuardParseError> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Guard::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Guard, GuardParseError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Guard::Not(Box::new(self.parse_unary()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_or()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = self.pos;
                while self
                    .text
                    .as_bytes()
                    .get(self.pos)
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                match &self.text[start..self.pos] {
                    "true" => Ok(Guard::True),
                    "false" => Ok(Guard::False),
                    atom => Ok(Guard::Atom(atom.to_string())),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character `{}`", c as char))),
            None => Err(self.error("unexpected end of guard")),
        }
    }
}

/// Parses a guard expression; reports the byte offset of the first error.
pub fn parse_guard(text: &str) -> Result<Guard, GuardParseError> {
    let mut p = Parser { text, pos: 0 };
    let guard = p.parse_or()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input after guard"));
    }
    Ok(guard)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn truth_of(letter: &[&str]) -> impl Fn(&str) -> bool + '_ {
        move |a: &str| letter.contains(&a)
    }

    #[test]
    fn fig3_guards_evaluate() {
        let g = parse_guard("h1|h2").unwrap();
        assert!(g.eval(&truth_of(&["h2"])));
        let g = parse_guard("!h1 & !h2").unwrap();
        assert!(g.eval(&truth_of(&[])));
        assert!(!g.eval(&truth_of(&["h1"])));
        let g = parse_guard("true").unwrap();
        assert!(g.eval(&truth_of(&["anything"])));
    }

    #[test]
    fn precedence_not_over_and_over_or() {
        // !a & b | c  ≡  ((!a) & b) | c
        let g = parse_guard("!a & b | c").unwrap();
        assert_eq!(
            g,
            Guard::Or(
                Box::new(Guard::And(
                    Box::new(Guard::Not(Box::new(Guard::Atom("a".into())))),
                    Box::new(Guard::Atom("b".into())),
                )),
                Box::new(Guard::Atom("c".into())),
            )
        );
    }

    #[test]
    fn parens_override_precedence() {
        let g = parse_guard("!(a | b)").unwrap();
        assert!(!g.eval(&truth_of(&["b"])));
        assert!(g.eval(&truth_of(&[])));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_guard("a & ").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse_guard("a | | b").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse_guard("(a").unwrap_err();
        assert!(err.message.contains(")"));
    }

    /// Independent truth-table oracle: computes the satisfying-assignment set
    /// compositionally over the full 2^n table, then compares with eval.
    fn sat_set(guard: &Guard, atoms: &[&str]) -> BTreeSet<u32> {
        let all: BTreeSet<u32> = (0..(1u32 << atoms.len())).collect();
        match guard {
            Guard::True => all,
            Guard::False => BTreeSet::new(),
            Guard::Atom(a) => {
                let Some(i) = atoms.iter().position(|x| x == a) else {
                    return BTreeSet::new();
                };
                all.into_iter().filter(|m| m & (1 << i) != 0).collect()
            }
            Guard::Not(g) => all.difference(&sat_set(g, atoms)).copied().collect(),
            Guard::And(l, r) => sat_set(l, atoms)
                .intersection(&sat_set(r, atoms))
                .copied()
                .collect(),
            Guard::Or(l, r) => sat_set(l, atoms)
                .union(&sat_set(r, atoms))
                .copied()
                .collect(),
        }
    }

    #[test]
    fn eval_matches_truth_table_enumeration() {
        let atoms = ["a", "b", "c", "d"];
        let samples = [
            "a",
            "!a",
            "a & b",
            "a | b & c",
            "!(a | b) & (c | !d)",
            "a & !a",
            "true & (a | false)",
            "!!a | !(b & !c) & d",
            "(a | b) & (c | d)",
        ];
        for text in samples {
            let g = parse_guard(text).unwrap();
            let sats = sat_set(&g, &atoms);
            for mask in 0u32..16 {
                let direct = g.eval(&|name: &str| {
                    atoms
                        .iter()
                        .position(|a| *a == name)
                        .is_some_and(|i| mask & (1 << i) != 0)
                });
                assert_eq!(direct, sats.contains(&mask), "guard {text} on {mask:#06b}");
            }
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let samples = [
            "a",
            "!a & b",
            "a | b | c",
            "a & b & c",
            "a & (b | c)",
            "!(a & b)",
            "a | (b | c)",
            "(a | b) & c | !d",
            "true",
            "false | a",
        ];
        for text in samples {
            let g = parse_guard(text).unwrap();
            let printed = g.to_string();
            let reparsed = parse_guard(&printed).unwrap();
            assert_eq!(g, reparsed, "round trip through `{printed}`");
        }
    }
}
