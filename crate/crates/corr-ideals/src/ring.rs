//! Multivariate polynomials over a field tower, with named variables and
//! canonical term storage.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use corr_algebra::{FieldTower, TowerElem};

/// Exponent vector; length equals the ring's variable count.
pub type Monomial = Vec<u32>;

#[derive(Debug, PartialEq)]
struct RingInner {
    tower: FieldTower,
    vars: Vec<String>,
}

/// The ambient polynomial ring: a coefficient tower and an ordered variable
/// list.
#[derive(Clone)]
pub struct PolyRing {
    inner: Arc<RingInner>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.inner.tower, self.inner.vars.join(", "))
    }
}

impl PolyRing {
    pub fn new(tower: &FieldTower, vars: &[&str]) -> Self {
        PolyRing {
            inner: Arc::new(RingInner {
                tower: tower.clone(),
                vars: vars.iter().map(|s| s.to_string()).collect(),
            }),
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.inner.tower
    }

    pub fn vars(&self) -> Vec<&str> {
        self.inner.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(self.inner.tower.one())
    }

    pub fn constant(&self, c: TowerElem) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; self.num_vars()], c);
        }
        MultiPoly { ring: self.clone(), terms }
    }

    pub fn from_i64(&self, n: i64) -> MultiPoly {
        self.constant(self.inner.tower.from_i64(n))
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(&self, i: usize) -> MultiPoly {
        assert!(i < self.num_vars());
        let mut m = vec![0; self.num_vars()];
        m[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, self.inner.tower.one());
        MultiPoly { ring: self.clone(), terms }
    }
}

/// A multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, TowerElem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl MultiPoly {
    pub fn from_terms(ring: &PolyRing, terms: Vec<(Monomial, TowerElem)>) -> Self {
        let mut map: BTreeMap<Monomial, TowerElem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.num_vars(), "monomial arity mismatch");
            assert!(c.tower() == ring.tower(), "coefficient tower mismatch");
            let entry = map.remove(&m);
            let v = match entry {
                Some(prev) => prev.add(&c),
                None => c,
            };
            if v.is_zero() {
                map.remove(&m);
            } else {
                map.insert(m, v);
            }
        }
        MultiPoly { ring: ring.clone(), terms: map }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &TowerElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> TowerElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.tower().zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "ring mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.remove(m) {
                Some(prev) => {
                    let v = prev.add(c);
                    if !v.is_zero() {
                        terms.insert(m.clone(), v);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "ring mismatch");
        let mut out: BTreeMap<Monomial, TowerElem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let c = c1.mul(c2);
                match out.remove(&m) {
                    Some(prev) => {
                        let v = prev.add(&c);
                        if !v.is_zero() {
                            out.insert(m, v);
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            out.insert(m, c);
                        }
                    }
                }
            }
        }
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn mul_elem(&self, c: &TowerElem) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &TowerElem) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, x)| {
                    (mm.iter().zip(m).map(|(a, b)| a + b).collect(), x.mul(c))
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate at a full point whose coordinates live in an extension of
    /// the coefficient tower.
    pub fn eval(&self, point: &[TowerElem]) -> TowerElem {
        assert_eq!(point.len(), self.ring.num_vars());
        let target = if point.is_empty() {
            self.ring.tower().clone()
        } else {
            point[0].tower().clone()
        };
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = c.promote(&target).expect("point tower extends coefficients");
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&point[i].pow(e as i64).unwrap());
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute values (in an extension tower L) for a subset of the
    /// variables; the result lives in `target`, a ring over L in the
    /// remaining variables.
    pub fn substitute(
        &self,
        assignments: &[(usize, TowerElem)],
        target: &PolyRing,
    ) -> MultiPoly {
        let l = target.tower().clone();
        let assigned: Vec<Option<&TowerElem>> = {
            let mut v = vec![None; self.ring.num_vars()];
            for (i, e) in assignments {
                assert!(e.tower() == &l, "assignment tower mismatch");
                v[*i] = Some(e);
            }
            v
        };
        // Remaining variables map onto target variables in order.
        let kept: Vec<usize> =
            (0..self.ring.num_vars()).filter(|i| assigned[*i].is_none()).collect();
        assert_eq!(kept.len(), target.num_vars(), "target ring arity mismatch");
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut coeff = c.promote(&l).expect("extension tower");
            let mut mono = vec![0u32; target.num_vars()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assigned[i] {
                    Some(v) => coeff = coeff.mul(&v.pow(e as i64).unwrap()),
                    None => {
                        let j = kept.iter().position(|&k| k == i).unwrap();
                        mono[j] = e;
                    }
                }
            }
            out = out.add(&MultiPoly::from_terms(target, vec![(mono, coeff)]));
        }
        out
    }

    /// Canonical string with `+` between terms, variables in ring order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let vars = self.ring.vars();
        let mut parts = vec![];
        for (m, c) in self.terms.iter().rev() {
            let mut factors = vec![];
            let cs = c.render();
            let coeff_is_one = c.is_one();
            let is_const = m.iter().all(|&e| e == 0);
            if !coeff_is_one || is_const {
                if cs.contains('+') || cs.contains('/') || cs.contains('*') {
                    factors.push(format!("({cs})"));
                } else {
                    factors.push(cs);
                }
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use corr_algebra::{FieldTower, IrreducibilityPolicy, UniPoly};

    #[test]
    fn arithmetic_and_storage() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let f = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&vec![2, 0]), q.from_i64(1));
        assert_eq!(f.coeff(&vec![0, 2]), q.from_i64(-1));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn substitution_into_extension() {
        // y^2 - x at x = 2 gives y^2 - 2; graph z - y^2 at y = sqrt2 gives z - 2.
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(1).mul(&r.var(1)).sub(&r.var(0));
        let target = PolyRing::new(&q, &["y"]);
        let g = f.substitute(&[(0, q.from_i64(2))], &target);
        assert_eq!(g.render(), "y^2 + -2");

        let l = q
            .extend_algebraic(
                "r2",
                &UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]),
                IrreducibilityPolicy::Check,
            )
            .unwrap();
        let ryz = PolyRing::new(&q, &["y", "z"]);
        let graph = ryz.var(1).sub(&ryz.var(0).mul(&ryz.var(0)));
        let tz = PolyRing::new(&l, &["z"]);
        let fib = graph.substitute(&[(0, l.generator(0))], &tz);
        // (sqrt 2)^2 reduces to 2 in the tower.
        assert_eq!(fib.render(), "z + -2");
    }

    #[test]
    fn evaluation() {
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let f = r.var(0).pow(2).add(&r.var(1)); // x^2 + y
        let v = f.eval(&[q.from_i64(3), q.from_i64(-4)]);
        assert_eq!(v, q.from_i64(5));
    }
}
