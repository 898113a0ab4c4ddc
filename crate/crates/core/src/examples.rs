//! Built-in demo instance: a seven-state arena where P1 must visit `h1` or
//! `h2` while an observer only sees coarse state classes. Used by the README,
//! the test suite and `shroud verify`'s self-check.

use crate::model::{GameArena, ObservationMap, SecretDfa};
use crate::parse::{parse_arena, parse_dfa};

pub const EXAMPLE1_ARENA: &str = "\
# Seven-state demo arena.
atoms h1 h2
state 0  owner=1 label=-
state h1 owner=2 label=h1
state 1  owner=2 label=-
state 4  owner=2 label=-
state 2  owner=1 label=-
state h2 owner=1 label=h2
state 3  owner=1 label=-
init 0
action a1 player=1
action a2 player=1
action a3 player=1
action b1 player=2
action b2 player=2
trans 0 a1 h1
trans 0 a2 1
trans 0 a3 4
trans h1 b1 2
trans h1 b2 h2
trans 1 b1 h2
trans 1 b2 2
trans 4 b1 h2
trans 4 b2 h2
trans 2 a1 3
trans h2 a1 3
trans 3 a1 3
obsclass O_mid h1 h2 2
obsclass O_14 1 4
obsclass O_0 0
obsclass O_3 3
";

pub const EXAMPLE1_DFA: &str = "\
# Reach h1 or h2, then stay accepting.
dstate q0
dstate q1 accepting
init q0
edge q0 \"h1|h2\" q1
edge q0 \"!h1&!h2\" q0
edge q1 \"true\" q1
";

/// A parsed (arena, DFA, observation) triple ready for analysis.
#[derive(Debug, Clone)]
pub struct Instance {
    pub arena: GameArena,
    pub dfa: SecretDfa,
    pub obs: ObservationMap,
}

/// Parses the demo instance. Panics on malformed constants (covered by tests).
pub fn example1() -> Instance {
    let (arena, obs) = parse_arena(EXAMPLE1_ARENA).expect("demo arena parses");
    let dfa = parse_dfa(EXAMPLE1_DFA)
        .expect("demo DFA parses")
        .link(&arena)
        .expect("demo DFA links");
    Instance { arena, dfa, obs }
}
