//! A minimal commutative-ring interface so the symmetric-power machinery
//! works over field towers and over artinian quotient rings alike.

use corr_algebra::{FieldTower, TowerElem};
use corr_ideals::ArtinianQuotient;

pub trait CommRing: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Exact unit test (not just nonzero: quotient rings have zero
    /// divisors).
    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let one = self.one();
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        if n < 0 {
            acc = self.neg(&acc);
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

impl CommRing for FieldTower {
    type Elem = TowerElem;

    fn zero(&self) -> TowerElem {
        FieldTower::zero(self)
    }

    fn one(&self) -> TowerElem {
        FieldTower::one(self)
    }

    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a.add(b)
    }

    fn neg(&self, a: &TowerElem) -> TowerElem {
        a.neg()
    }

    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a.mul(b)
    }

    fn is_zero(&self, a: &TowerElem) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &TowerElem) -> bool {
        !a.is_zero()
    }

    fn from_i64(&self, n: i64) -> TowerElem {
        FieldTower::from_i64(self, n)
    }
}

/// An artinian quotient ring acting as a base ring for symmetric-power
/// tests; elements are coordinate vectors in the standard-monomial basis.
#[derive(Clone)]
pub struct QuotientRing {
    quo: ArtinianQuotient,
}

impl QuotientRing {
    pub fn new(quo: ArtinianQuotient) -> Self {
        QuotientRing { quo }
    }

    pub fn quotient(&self) -> &ArtinianQuotient {
        &self.quo
    }

    fn tower(&self) -> &FieldTower {
        self.quo.ring().tower()
    }

    /// Matrix of multiplication by an element.
    fn mult_matrix_of(&self, a: &[TowerElem]) -> corr_algebra::Matrix {
        let dim = self.quo.dim();
        let tower = self.tower();
        let mut acc = corr_algebra::Matrix::zero(tower, dim, dim);
        for (j, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Multiplication by the j-th standard monomial.
            let mono = &self.quo.standard_monomials()[j].clone();
            let mut m = corr_algebra::Matrix::identity(tower, dim);
            for (v, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    m = self.quo.mult_matrix(v).mul(&m);
                }
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

impl CommRing for QuotientRing {
    type Elem = Vec<TowerElem>;

    fn zero(&self) -> Vec<TowerElem> {
        vec![self.tower().zero(); self.quo.dim()]
    }

    fn one(&self) -> Vec<TowerElem> {
        let mut v = self.zero();
        let pos = self
            .quo
            .standard_monomials()
            .iter()
            .position(|m| m.iter().all(|&e| e == 0))
            .expect("1 is a standard monomial");
        v[pos] = self.tower().one();
        v
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| x.neg()).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mult_matrix_of(a).apply(b)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.mult_matrix_of(a).rank() == self.quo.dim()
    }
}
