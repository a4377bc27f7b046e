//! Monomial orders: lex, degrevlex, and a two-block elimination order.

use crate::ring::Monomial;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Compare the first `split` variables degrevlex, then the rest; the
    /// first block is eliminated first.
    Block { split: usize },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().zip(b).rev() {
                match x.cmp(y) {
                    Ordering::Equal => {}
                    // rightmost difference: smaller exponent is larger
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        }
        ord => ord,
    }
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Block { split } => {
                match degrevlex(&a[..*split], &b[..*split]) {
                    Ordering::Equal => degrevlex(&a[*split..], &b[*split..]),
                    ord => ord,
                }
            }
        }
    }
}

pub(crate) fn monomial_divides(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn monomial_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn monomial_div(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
