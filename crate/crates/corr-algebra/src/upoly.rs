//! Dense univariate polynomials over a field tower.

use std::fmt;

use crate::error::AlgebraError;
use crate::tower::{FieldTower, TowerElem};

/// A univariate polynomial with coefficients in one tower. Coefficient 0 is
/// the constant term; trailing zeros are trimmed, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, PartialEq)]
pub struct UniPoly {
    tower: FieldTower,
    coeffs: Vec<TowerElem>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl UniPoly {
    pub fn from_coeffs(tower: &FieldTower, mut coeffs: Vec<TowerElem>) -> Self {
        for c in &coeffs {
            assert!(c.tower() == tower, "coefficient tower mismatch");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { tower: tower.clone(), coeffs }
    }

    pub fn from_i64_coeffs(tower: &FieldTower, coeffs: &[i64]) -> Self {
        Self::from_coeffs(tower, coeffs.iter().map(|&n| tower.from_i64(n)).collect())
    }

    pub fn zero(tower: &FieldTower) -> Self {
        UniPoly { tower: tower.clone(), coeffs: vec![] }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::constant(tower.one())
    }

    pub fn constant(c: TowerElem) -> Self {
        let tower = c.tower().clone();
        Self::from_coeffs(&tower, vec![c])
    }

    /// The polynomial `t`.
    pub fn var(tower: &FieldTower) -> Self {
        Self::from_coeffs(tower, vec![tower.zero(), tower.one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: TowerElem, k: usize) -> Self {
        let tower = c.tower().clone();
        let mut coeffs = vec![tower.zero(); k];
        coeffs.push(c);
        Self::from_coeffs(&tower, coeffs)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> TowerElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn coeffs(&self) -> &[TowerElem] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> TowerElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::from_coeffs(&self.tower, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { tower: self.tower.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.tower);
        }
        let mut out = vec![self.tower.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(&self.tower, out)
    }

    pub fn mul_elem(&self, c: &TowerElem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Self::from_coeffs(&self.tower, coeffs)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.tower);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let lb = divisor.leading_coeff().inv()?;
        let db = divisor.coeffs.len();
        let mut r = self.coeffs.clone();
        if r.len() < db {
            return Ok((Self::zero(&self.tower), self.clone()));
        }
        let mut q = vec![self.tower.zero(); r.len() - db + 1];
        while r.len() >= db {
            let k = r.len() - db;
            let c = r.last().unwrap().mul(&lb);
            q[k] = c.clone();
            for (i, bc) in divisor.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(bc));
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::from_coeffs(&self.tower, q), Self::from_coeffs(&self.tower, r)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor).expect("division by zero");
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let li = a.leading_coeff().inv()?;
        Ok(a.mul_elem(&li))
    }

    /// Extended Euclid: monic `g` plus `s, t` with `s*self + t*other = g`.
    pub fn exgcd(&self, other: &Self) -> Result<(Self, Self, Self), AlgebraError> {
        let bt = &self.tower;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(bt), Self::zero(bt));
        let (mut t0, mut t1) = (Self::zero(bt), Self::one(bt));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, ns);
            (t0, t1) = (t1, nt);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let li = r0.leading_coeff().inv()?;
        Ok((r0.mul_elem(&li), s0.mul_elem(&li), t0.mul_elem(&li)))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(&self.tower);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.tower.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(&self.tower, coeffs)
    }

    pub fn eval(&self, x: &TowerElem) -> TowerElem {
        let mut acc = x.tower().zero();
        for c in self.coeffs.iter().rev() {
            let cx = if c.tower() == x.tower() {
                c.clone()
            } else {
                c.promote(x.tower()).expect("evaluation point tower extends coefficient tower")
            };
            acc = acc.mul(x).add(&cx);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Returns `(unit, monic)` with `unit * monic = self`.
    pub fn make_monic(&self) -> (TowerElem, Self) {
        if self.is_zero() {
            return (self.tower.one(), self.clone());
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return (lc, self.clone());
        }
        let li = lc.inv().expect("leading coefficient nonzero");
        (lc, self.mul_elem(&li))
    }

    /// Writes `self = g(t^p)` if all exponents are divisible by `p`.
    pub fn deflate(&self, p: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p != 0 && !c.is_zero() {
                return None;
            }
        }
        let coeffs = self.coeffs.iter().step_by(p).cloned().collect();
        Some(Self::from_coeffs(&self.tower, coeffs))
    }

    /// The substitution `t -> t^p`.
    pub fn inflate(&self, p: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.tower.zero(); (self.coeffs.len() - 1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = c.clone();
        }
        Self::from_coeffs(&self.tower, coeffs)
    }

    /// Map coefficients into another tower (promotion or any callback).
    pub fn map_coeffs(
        &self,
        target: &FieldTower,
        f: impl Fn(&TowerElem) -> TowerElem,
    ) -> Self {
        Self::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }

    pub fn promote(&self, to: &FieldTower) -> Result<Self, AlgebraError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.promote(to)?);
        }
        Ok(Self::from_coeffs(to, coeffs))
    }

    /// Resultant of two polynomials, via the Euclidean remainder formula.
    pub fn resultant(&self, other: &Self) -> Result<TowerElem, AlgebraError> {
        let tower = self.tower.clone();
        let (a, b) = (self.clone(), other.clone());
        fn go(a: &UniPoly, b: &UniPoly, tower: &FieldTower) -> Result<TowerElem, AlgebraError> {
            let da = a.degree();
            let db = b.degree();
            match (da, db) {
                (None, _) | (_, None) => Ok(tower.zero()),
                (Some(0), Some(_)) => a.leading_coeff().pow(db.unwrap() as i64),
                (Some(_), Some(0)) => b.leading_coeff().pow(da.unwrap() as i64),
                (Some(m), Some(n)) => {
                    let r = a.rem(b)?;
                    if r.is_zero() {
                        return Ok(tower.zero());
                    }
                    let dr = r.degree().unwrap();
                    // res(a, b) = (-1)^{mn} lc(b)^{m - dr} res(b, r)
                    let mut res = go(b, &r, tower)?;
                    res = res.mul(&b.leading_coeff().pow((m - dr) as i64)?);
                    if (m * n) % 2 == 1 {
                        res = res.neg();
                    }
                    Ok(res)
                }
            }
        }
        go(&a, &b, &tower)
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.render();
            let needs_paren = cs.contains('+') || cs.contains('/') || cs.contains('*');
            let cs = if needs_paren { format!("({cs})") } else { cs };
            parts.push(match i {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let q = FieldTower::rationals();
        // (t^2 - 1) = (t - 1)(t + 1)
        let f = UniPoly::from_i64_coeffs(&q, &[-1, 0, 1]);
        let g = UniPoly::from_i64_coeffs(&q, &[-1, 1]);
        let (quo, rem) = f.divrem(&g).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, UniPoly::from_i64_coeffs(&q, &[1, 1]));
        let h = UniPoly::from_i64_coeffs(&q, &[1, 1]);
        assert_eq!(f.gcd(&h).unwrap(), h);
    }

    #[test]
    fn exgcd_bezout() {
        let q = FieldTower::rationals();
        let f = UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]);
        let g = UniPoly::from_i64_coeffs(&q, &[0, 1]);
        let (d, s, t) = f.exgcd(&g).unwrap();
        assert_eq!(d, UniPoly::one(&q));
        assert_eq!(s.mul(&f).add(&t.mul(&g)), UniPoly::one(&q));
    }

    #[test]
    fn resultant_of_coprime_quadratics() {
        let q = FieldTower::rationals();
        // res(t^2 + 1, t^2 - 1) = 4
        let f = UniPoly::from_i64_coeffs(&q, &[1, 0, 1]);
        let g = UniPoly::from_i64_coeffs(&q, &[-1, 0, 1]);
        assert_eq!(f.resultant(&g).unwrap(), q.from_i64(4));
        // shared root => resultant 0
        let h = UniPoly::from_i64_coeffs(&q, &[-1, 1]);
        let k = UniPoly::from_i64_coeffs(&q, &[-1, 0, 1]);
        assert!(h.resultant(&k).unwrap().is_zero());
    }

    #[test]
    fn deflate_inflate_roundtrip() {
        let q = FieldTower::rationals();
        let f = UniPoly::from_i64_coeffs(&q, &[2, 0, 0, 5]); // 2 + 5 t^3
        let g = f.deflate(3).unwrap();
        assert_eq!(g, UniPoly::from_i64_coeffs(&q, &[2, 5]));
        assert_eq!(g.inflate(3), f);
        assert!(f.deflate(2).is_none());
    }
}
