//! Positive and negative connective occurrences.

use std::ops::Add;

use serde::Serialize;

use crate::syntax::{Formula, GeneralFormula, Sequent};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConnectiveCounts {
    pub pos_tensor: u64,
    pub neg_tensor: u64,
    pub pos_par: u64,
    pub neg_par: u64,
    pub commas: u64,
}

impl Add for ConnectiveCounts {
    type Output = ConnectiveCounts;
    fn add(self, o: Self) -> Self {
        ConnectiveCounts {
            pos_tensor: self.pos_tensor + o.pos_tensor,
            neg_tensor: self.neg_tensor + o.neg_tensor,
            pos_par: self.pos_par + o.pos_par,
            neg_par: self.neg_par + o.neg_par,
            commas: self.commas + o.commas,
        }
    }
}

impl ConnectiveCounts {
    /// Swaps the signs of every connective.
    pub fn dual(self) -> Self {
        ConnectiveCounts {
            pos_tensor: self.neg_tensor,
            neg_tensor: self.pos_tensor,
            pos_par: self.neg_par,
            neg_par: self.pos_par,
            commas: self.commas,
        }
    }
}

pub fn count_general(g: &GeneralFormula) -> ConnectiveCounts {
    fn go(g: &GeneralFormula, negative: bool, c: &mut ConnectiveCounts) {
        match g {
            GeneralFormula::Atom(_) => {}
            GeneralFormula::Neg(x) => go(x, !negative, c),
            GeneralFormula::Tensor(a, b) => {
                if negative { c.neg_tensor += 1 } else { c.pos_tensor += 1 }
                go(a, negative, c);
                go(b, negative, c);
            }
            GeneralFormula::Par(a, b) => {
                if negative { c.neg_par += 1 } else { c.pos_par += 1 }
                go(a, negative, c);
                go(b, negative, c);
            }
        }
    }
    let mut c = ConnectiveCounts::default();
    go(g, false, &mut c);
    c
}

/// Counts for an NNF formula; negative counts are always zero.
pub fn count_formula(f: &Formula) -> ConnectiveCounts {
    let mut c = ConnectiveCounts::default();
    let mut stack = vec![f];
    while let Some(f) = stack.pop() {
        match f {
            Formula::Tensor(a, b) => {
                c.pos_tensor += 1;
                stack.extend([&**a, &**b]);
            }
            Formula::Par(a, b) => {
                c.pos_par += 1;
                stack.extend([&**a, &**b]);
            }
            _ => {}
        }
    }
    c
}

pub fn count_sequent(s: &Sequent) -> ConnectiveCounts {
    let mut c = s.formulas().iter().map(count_formula).fold(ConnectiveCounts::default(), Add::add);
    c.commas = s.len().saturating_sub(1) as u64;
    c
}

pub fn derived_t(c: &ConnectiveCounts) -> i64 {
    (c.pos_tensor + c.neg_par) as i64
}

pub fn derived_p(c: &ConnectiveCounts) -> i64 {
    (c.neg_tensor + c.pos_par + c.commas) as i64
}

fn di_balance(c: &ConnectiveCounts) -> i64 {
    (c.neg_tensor + c.pos_par) as i64 - (c.pos_tensor + c.neg_par) as i64
}

pub fn di_invariant_holds(f: &Formula) -> bool {
    di_balance(&count_formula(f)) == 1
}

pub fn di_invariant_holds_general(g: &GeneralFormula) -> bool {
    di_balance(&count_general(g)) == 1
}

pub fn sc_invariant_holds(s: &Sequent) -> bool {
    let c = count_sequent(s);
    derived_p(&c) - derived_t(&c) == 1
}
