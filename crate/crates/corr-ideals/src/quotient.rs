//! Artinian quotients of polynomial rings: standard monomial bases and
//! multiplication matrices.

use corr_algebra::{Matrix, TowerElem};

use crate::error::IdealError;
use crate::groebner::{is_zero_dimensional, leading_term, normal_form};
use crate::order::monomial_divides;
use crate::ring::{Monomial, MultiPoly, PolyRing};
use crate::TermOrder;

/// A zero-dimensional quotient ring presented by its standard monomials
/// (those outside the leading-term ideal) and one multiplication matrix per
/// variable.
#[derive(Debug, Clone)]
pub struct ArtinianQuotient {
    ring: PolyRing,
    order: TermOrder,
    gb: Vec<MultiPoly>,
    standard_monomials: Vec<Monomial>,
    mult_matrices: Vec<Matrix>,
}

/// Standard monomials plus multiplication matrices for a reduced
/// zero-dimensional Groebner basis.
pub fn quotient_basis(gb: &[MultiPoly], order: TermOrder) -> Result<ArtinianQuotient, IdealError> {
    let ring = gb
        .first()
        .map(|g| g.ring().clone())
        .ok_or(IdealError::NotZeroDimensional)?;
    if !is_zero_dimensional(gb, order) {
        return Err(IdealError::NotZeroDimensional);
    }
    let n = ring.num_vars();
    let lts: Vec<Monomial> = gb.iter().filter_map(|g| Some(leading_term(g, order)?.0)).collect();
    if lts.iter().any(|m| m.iter().all(|&e| e == 0)) {
        // Unit ideal: the zero ring, dimension 0.
        return Ok(ArtinianQuotient {
            ring: ring.clone(),
            order,
            gb: gb.to_vec(),
            standard_monomials: vec![],
            mult_matrices: vec![Matrix::zero(ring.tower(), 0, 0); n],
        });
    }
    // Per-variable caps from the pure-power leading terms.
    let caps: Vec<u32> = (0..n)
        .map(|v| {
            lts.iter()
                .filter(|m| m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|m| m[v])
                .min()
                .expect("zero-dimensional basis has a pure power per variable")
        })
        .collect();
    // Enumerate monomials under the caps, keep those not divisible by a
    // leading term, in the term order.
    let mut standard: Vec<Monomial> = vec![];
    let mut stack: Vec<Monomial> = vec![vec![]];
    while let Some(partial) = stack.pop() {
        if partial.len() == n {
            if !lts.iter().any(|lt| monomial_divides(lt, &partial)) {
                standard.push(partial);
            }
            continue;
        }
        let v = partial.len();
        for e in 0..caps[v] {
            let mut next = partial.clone();
            next.push(e);
            stack.push(next);
        }
    }
    standard.sort_by(|a, b| order.cmp(a, b));
    let dim = standard.len();
    let tower = ring.tower().clone();
    // Multiplication matrices: column j of matrix v is x_v * m_j reduced.
    let index_of = |m: &Monomial| standard.iter().position(|s| s == m);
    let mut mult_matrices = vec![];
    for v in 0..n {
        let mut mat = Matrix::zero(&tower, dim, dim);
        for (j, m) in standard.iter().enumerate() {
            let mut shifted = m.clone();
            shifted[v] += 1;
            if let Some(i) = index_of(&shifted) {
                mat.set(i, j, tower.one());
            } else {
                let poly = MultiPoly::from_terms(&ring, vec![(shifted, tower.one())]);
                let nf = normal_form(&poly, gb, order);
                for (mm, c) in nf.terms() {
                    let i = index_of(mm).expect("normal form lies in the standard span");
                    mat.set(i, j, c.clone());
                }
            }
        }
        mult_matrices.push(mat);
    }
    Ok(ArtinianQuotient {
        ring,
        order,
        gb: gb.to_vec(),
        standard_monomials: standard,
        mult_matrices,
    })
}

impl ArtinianQuotient {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn groebner_basis(&self) -> &[MultiPoly] {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.standard_monomials.len()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard_monomials
    }

    pub fn mult_matrix(&self, var: usize) -> &Matrix {
        &self.mult_matrices[var]
    }

    /// Coordinates of the class of `f` in the standard-monomial basis.
    pub fn coords(&self, f: &MultiPoly) -> Vec<TowerElem> {
        let nf = normal_form(f, &self.gb, self.order);
        let tower = self.ring.tower();
        let mut v = vec![tower.zero(); self.dim()];
        for (m, c) in nf.terms() {
            let i = self
                .standard_monomials
                .iter()
                .position(|s| s == m)
                .expect("normal form lies in the standard span");
            v[i] = c.clone();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use corr_algebra::FieldTower;

    #[test]
    fn square_of_maximal_ideal() {
        // k[x,y]/<x^2, xy, y^2>: basis {1, x, y}, dimension 3.
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let gb = buchberger(
            &[x.pow(2), x.mul(&y), y.pow(2)],
            TermOrder::DegRevLex,
        )
        .unwrap();
        let quo = quotient_basis(&gb, TermOrder::DegRevLex).unwrap();
        assert_eq!(quo.dim(), 3);
        // Ascending degrevlex: 1, then y, then x.
        assert_eq!(
            quo.standard_monomials(),
            &[vec![0, 0], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn single_point_and_jet() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x"]);
        let x = r.var(0);
        // k[x]/<x - 7>: dimension 1.
        let gb = buchberger(&[x.sub(&r.from_i64(7))], TermOrder::Lex).unwrap();
        assert_eq!(quotient_basis(&gb, TermOrder::Lex).unwrap().dim(), 1);
        // k[x]/<x^4>: dimension 4.
        let gb = buchberger(&[x.pow(4)], TermOrder::Lex).unwrap();
        assert_eq!(quotient_basis(&gb, TermOrder::Lex).unwrap().dim(), 4);
    }

    #[test]
    fn multiplication_matrices_commute() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        // <x^2 - y, y^2 - 3>: dimension 4.
        let gb = buchberger(
            &[x.pow(2).sub(&y), y.pow(2).sub(&r.from_i64(3))],
            TermOrder::DegRevLex,
        )
        .unwrap();
        let quo = quotient_basis(&gb, TermOrder::DegRevLex).unwrap();
        assert_eq!(quo.dim(), 4);
        let a = quo.mult_matrix(0);
        let b = quo.mult_matrix(1);
        assert_eq!(a.mul(b), b.mul(a));
    }

    #[test]
    fn positive_dimensional_rejected() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(0).mul(&r.var(1)).sub(&r.from_i64(1));
        let gb = buchberger(&[f], TermOrder::DegRevLex).unwrap();
        assert_eq!(
            quotient_basis(&gb, TermOrder::DegRevLex).unwrap_err(),
            IdealError::NotZeroDimensional
        );
    }
}
