//! Buchberger's algorithm with the coprime-leading-term and chain criteria,
//! full normal forms, and interreduction to the unique reduced basis.

use corr_algebra::TowerElem;

use crate::error::IdealError;
use crate::order::{monomial_div, monomial_divides, monomial_lcm, TermOrder};
use crate::ring::{Monomial, MultiPoly};

pub(crate) fn leading_term(f: &MultiPoly, order: TermOrder) -> Option<(Monomial, TowerElem)> {
    f.terms()
        .max_by(|(m1, _), (m2, _)| order.cmp(m1, m2))
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// Full normal form of `f` modulo `basis`: no remaining term is divisible
/// by any basis leading term.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly], order: TermOrder) -> MultiPoly {
    let ring = f.ring().clone();
    let lts: Vec<(Monomial, TowerElem)> =
        basis.iter().filter_map(|g| leading_term(g, order)).collect();
    let mut rest = f.clone();
    let mut out = ring.zero();
    while !rest.is_zero() {
        let (m, c) = leading_term(&rest, order).unwrap();
        let mut reduced = false;
        for (i, (ltm, ltc)) in lts.iter().enumerate() {
            if monomial_divides(ltm, &m) {
                let q = monomial_div(&m, ltm);
                let factor = c.div(ltc).expect("leading coefficient nonzero");
                rest = rest.sub(&basis[i].mul_monomial(&q, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            let t = MultiPoly::from_terms(&ring, vec![(m.clone(), c.clone())]);
            out = out.add(&t);
            rest = rest.sub(&t);
        }
    }
    out
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: TermOrder) -> MultiPoly {
    let (fm, fc) = leading_term(f, order).unwrap();
    let (gm, gc) = leading_term(g, order).unwrap();
    let l = monomial_lcm(&fm, &gm);
    let a = f.mul_monomial(&monomial_div(&l, &fm), &fc.inv().unwrap());
    let b = g.mul_monomial(&monomial_div(&l, &gm), &gc.inv().unwrap());
    a.sub(&b)
}

/// The unique reduced Groebner basis of the generated ideal, monic, sorted
/// ascending by leading monomial.
pub fn buchberger(gens: &[MultiPoly], order: TermOrder) -> Result<Vec<MultiPoly>, IdealError> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(vec![]),
    };
    let mut basis: Vec<MultiPoly> = vec![];
    for g in gens {
        if g.ring() != &ring {
            return Err(IdealError::RingMismatch);
        }
        if !g.is_zero() {
            let (_, c) = leading_term(g, order).unwrap();
            basis.push(g.mul_elem(&c.inv().expect("nonzero leading coefficient")));
        }
    }
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let mut pairs: Vec<(usize, usize)> = vec![];
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    let lt = |b: &MultiPoly| leading_term(b, order).unwrap().0;
    while let Some((i, j)) = pairs.pop() {
        let mi = lt(&basis[i]);
        let mj = lt(&basis[j]);
        let l = monomial_lcm(&mi, &mj);
        // First criterion: coprime leading terms.
        if l.iter().zip(mi.iter().zip(&mj)).all(|(&le, (&a, &b))| le == a + b) {
            continue;
        }
        // Chain criterion: some other leading term divides the lcm and both
        // companion pairs were already handled (not still queued).
        let mut skip = false;
        for (k, bk) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if monomial_divides(&lt(bk), &l) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if !pairs.contains(&p1) && !pairs.contains(&p2) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let (_, c) = leading_term(&r, order).unwrap();
            let r = r.mul_elem(&c.inv().unwrap());
            let new_idx = basis.len();
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
            basis.push(r);
        }
    }
    // Minimize: drop elements whose leading term is divisible by another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && monomial_divides(&lt(&basis[j]), &lt(&basis[i])) {
                // prefer the one with smaller leading term; drop i if j's
                // LT strictly divides, or j < i on equality
                if lt(&basis[j]) != lt(&basis[i]) || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<MultiPoly> =
        basis.into_iter().zip(keep).filter_map(|(b, k)| k.then_some(b)).collect();
    // Interreduce: replace each by its normal form against the others.
    let mut reduced: Vec<MultiPoly> = vec![];
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = normal_form(&minimal[i], &others, order);
        if !r.is_zero() {
            let (_, c) = leading_term(&r, order).unwrap();
            reduced.push(r.mul_elem(&c.inv().unwrap()));
        }
    }
    reduced.sort_by(|a, b| order.cmp(&lt(a), &lt(b)));
    Ok(reduced)
}

/// True when the leading terms include a pure power of every variable. The
/// unit ideal (basis `{1}`) counts: the empty scheme is finite.
pub fn is_zero_dimensional(gb: &[MultiPoly], order: TermOrder) -> bool {
    let Some(first) = gb.first() else {
        return false;
    };
    let n = first.ring().num_vars();
    if n == 0 {
        return true;
    }
    let lts: Vec<Monomial> = gb.iter().filter_map(|g| Some(leading_term(g, order)?.0)).collect();
    if lts.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return true;
    }
    (0..n).all(|v| {
        lts.iter().any(|m| m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0))
    })
}

/// Membership test via normal form against a Groebner basis.
pub fn ideal_contains(gb: &[MultiPoly], f: &MultiPoly, order: TermOrder) -> bool {
    normal_form(f, gb, order).is_zero()
}
