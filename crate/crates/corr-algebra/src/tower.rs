//! Field towers: a prime field extended by rational function fields and
//! univariate algebraic quotients, with exact normal-form arithmetic.
//!
//! A tower has a fixed shape: the prime field, then every transcendental
//! step (each adjoins a rational function field in one variable), then the
//! algebraic steps. Elements are nested coefficient representations, fully
//! reduced at every level: polynomial parts have degree below the step
//! degree, fraction parts are in lowest terms with monic denominators.

use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::scalar::{PrimeField, Scalar};

/// Whether an algebraic step's minimal polynomial was checked irreducible
/// at construction or merely asserted by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibilityStatus {
    Verified,
    Asserted,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum StepData {
    Transcendental,
    Algebraic {
        /// Full coefficient vector, length `degree + 1`, leading 1; the
        /// coefficients live one level down.
        min_poly: Vec<Repr>,
        status: IrreducibilityStatus,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Step {
    pub(crate) name: String,
    pub(crate) data: StepData,
}

impl Step {
    pub(crate) fn degree(&self) -> Option<usize> {
        match &self.data {
            StepData::Transcendental => None,
            StepData::Algebraic { min_poly, .. } => Some(min_poly.len() - 1),
        }
    }
}

#[derive(Debug, PartialEq)]
pub(crate) struct TowerInner {
    pub(crate) base: PrimeField,
    pub(crate) steps: Vec<Step>,
}

/// An exact field presented as a tower of extensions of a prime field.
#[derive(Clone)]
pub struct FieldTower {
    pub(crate) inner: Arc<TowerInner>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || *self.inner == *other.inner
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.base)?;
        let trans: Vec<&str> = self
            .inner
            .steps
            .iter()
            .filter(|s| matches!(s.data, StepData::Transcendental))
            .map(|s| s.name.as_str())
            .collect();
        if !trans.is_empty() {
            write!(f, "({})", trans.join(", "))?;
        }
        for s in &self.inner.steps {
            if let StepData::Algebraic { min_poly, .. } = &s.data {
                write!(f, "[{}; deg {}]", s.name, min_poly.len() - 1)?;
            }
        }
        Ok(())
    }
}

/// Nested normal-form representation of a tower element.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Repr {
    Base(Scalar),
    /// Algebraic level: coefficients one level down, trailing zeros trimmed,
    /// length at most the step degree. Empty = zero.
    Poly(Vec<Repr>),
    /// Transcendental level: numerator and denominator polynomials one
    /// level down; denominator monic, gcd(num, den) = 1. Zero is ([], [1]).
    Frac(Vec<Repr>, Vec<Repr>),
}

/// An element of a [`FieldTower`], kept in unique normal form.
#[derive(Clone, PartialEq)]
pub struct TowerElem {
    pub(crate) tower: FieldTower,
    pub(crate) repr: Repr,
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Arithmetic context for one level of a tower. The slice of steps
/// identifies the level; the last step is the one the context operates in.
#[derive(Clone, Copy)]
pub(crate) struct Ctx<'a> {
    pub(crate) base: &'a PrimeField,
    pub(crate) steps: &'a [Step],
}

impl<'a> Ctx<'a> {
    pub(crate) fn parent(&self) -> Ctx<'a> {
        Ctx { base: self.base, steps: &self.steps[..self.steps.len() - 1] }
    }

    pub(crate) fn zero(&self) -> Repr {
        match self.steps.last() {
            None => Repr::Base(self.base.zero()),
            Some(Step { data: StepData::Transcendental, .. }) => {
                Repr::Frac(vec![], vec![self.parent().one()])
            }
            Some(Step { data: StepData::Algebraic { .. }, .. }) => Repr::Poly(vec![]),
        }
    }

    pub(crate) fn one(&self) -> Repr {
        match self.steps.last() {
            None => Repr::Base(self.base.one()),
            Some(Step { data: StepData::Transcendental, .. }) => {
                let p = self.parent();
                Repr::Frac(vec![p.one()], vec![p.one()])
            }
            Some(Step { data: StepData::Algebraic { .. }, .. }) => {
                Repr::Poly(vec![self.parent().one()])
            }
        }
    }

    pub(crate) fn from_i64(&self, n: i64) -> Repr {
        self.lift_base(Repr::Base(self.base.from_i64(n)))
    }

    /// Embed a base-level representation at this level.
    pub(crate) fn lift_base(&self, r: Repr) -> Repr {
        let mut cur = r;
        for k in 1..=self.steps.len() {
            let ctx = Ctx { base: self.base, steps: &self.steps[..k] };
            cur = ctx.lift_from_parent(cur);
        }
        cur
    }

    /// Embed a parent-level representation at this level.
    pub(crate) fn lift_from_parent(&self, r: Repr) -> Repr {
        let p = self.parent();
        match self.steps.last().expect("lift_from_parent at base level").data {
            StepData::Transcendental => {
                if p.is_zero(&r) {
                    self.zero()
                } else {
                    Repr::Frac(vec![r], vec![p.one()])
                }
            }
            StepData::Algebraic { .. } => {
                if p.is_zero(&r) {
                    Repr::Poly(vec![])
                } else {
                    Repr::Poly(vec![r])
                }
            }
        }
    }

    /// Project to the parent level when the element is a constant there.
    pub(crate) fn try_to_parent(&self, r: &Repr) -> Option<Repr> {
        let p = self.parent();
        match r {
            Repr::Base(_) => None,
            Repr::Poly(v) => match v.len() {
                0 => Some(p.zero()),
                1 => Some(v[0].clone()),
                _ => None,
            },
            Repr::Frac(n, d) => {
                if d.len() != 1 || !p.is_one(&d[0]) {
                    return None;
                }
                match n.len() {
                    0 => Some(p.zero()),
                    1 => Some(n[0].clone()),
                    _ => None,
                }
            }
        }
    }

    /// The generator adjoined by this context's top step.
    pub(crate) fn generator(&self) -> Repr {
        let p = self.parent();
        match self.steps.last().expect("generator at base level").data {
            StepData::Transcendental => Repr::Frac(vec![p.zero(), p.one()], vec![p.one()]),
            StepData::Algebraic { ref min_poly, .. } => {
                if min_poly.len() == 2 {
                    // Degree-1 step: the generator is a base-level constant.
                    Repr::Poly(vec![p.neg(&min_poly[0])])
                } else {
                    Repr::Poly(vec![p.zero(), p.one()])
                }
            }
        }
    }

    pub(crate) fn is_zero(&self, r: &Repr) -> bool {
        match r {
            Repr::Base(s) => self.base.is_zero(s),
            Repr::Poly(v) => v.is_empty(),
            Repr::Frac(n, _) => n.is_empty(),
        }
    }

    pub(crate) fn is_one(&self, r: &Repr) -> bool {
        *r == self.one()
    }

    pub(crate) fn add(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Base(x), Repr::Base(y)) => Repr::Base(self.base.add(x, y)),
            (Repr::Poly(x), Repr::Poly(y)) => {
                let p = self.parent();
                Repr::Poly(p.pv_add(x, y))
            }
            (Repr::Frac(n1, d1), Repr::Frac(n2, d2)) => {
                let p = self.parent();
                let num = p.pv_add(&p.pv_mul(n1, d2), &p.pv_mul(n2, d1));
                let den = p.pv_mul(d1, d2);
                self.frac_normalize(num, den)
            }
            _ => panic!("level mismatch in add"),
        }
    }

    pub(crate) fn neg(&self, a: &Repr) -> Repr {
        match a {
            Repr::Base(x) => Repr::Base(self.base.neg(x)),
            Repr::Poly(x) => Repr::Poly(self.parent().pv_neg(x)),
            Repr::Frac(n, d) => Repr::Frac(self.parent().pv_neg(n), d.clone()),
        }
    }

    pub(crate) fn sub(&self, a: &Repr, b: &Repr) -> Repr {
        self.add(a, &self.neg(b))
    }

    pub(crate) fn mul(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Base(x), Repr::Base(y)) => Repr::Base(self.base.mul(x, y)),
            (Repr::Poly(x), Repr::Poly(y)) => {
                let p = self.parent();
                let prod = p.pv_mul(x, y);
                Repr::Poly(self.reduce_mod_step(prod))
            }
            (Repr::Frac(n1, d1), Repr::Frac(n2, d2)) => {
                let p = self.parent();
                self.frac_normalize(p.pv_mul(n1, n2), p.pv_mul(d1, d2))
            }
            _ => panic!("level mismatch in mul"),
        }
    }

    pub(crate) fn inv(&self, a: &Repr) -> Result<Repr, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        match a {
            Repr::Base(x) => Ok(Repr::Base(self.base.inv(x)?)),
            Repr::Frac(n, d) => Ok(self.frac_normalize(d.clone(), n.clone())),
            Repr::Poly(v) => {
                let p = self.parent();
                let Step { name, data } = self.steps.last().unwrap();
                let StepData::Algebraic { min_poly, .. } = data else { unreachable!() };
                // Extended Euclid against the step minimal polynomial.
                let (g, s, _) = p.pv_exgcd(v, min_poly)?;
                if g.len() != 1 {
                    // A nontrivial common factor with the minimal polynomial:
                    // the asserted step is actually reducible.
                    return Err(AlgebraError::ReducibleStep(name.clone()));
                }
                let ginv = p.inv(&g[0])?;
                let s = p.pv_mul_scalar(&s, &ginv);
                Ok(Repr::Poly(self.reduce_mod_step(s)))
            }
        }
    }

    pub(crate) fn div(&self, a: &Repr, b: &Repr) -> Result<Repr, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub(crate) fn pow_u64(&self, a: &Repr, mut e: u64) -> Repr {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn reduce_mod_step(&self, v: Vec<Repr>) -> Vec<Repr> {
        let StepData::Algebraic { min_poly, .. } = &self.steps.last().unwrap().data else {
            unreachable!()
        };
        let p = self.parent();
        if v.len() < min_poly.len() {
            return p.pv_trim(v);
        }
        let (_, r) = p.pv_divrem(&v, min_poly).expect("minimal polynomial is monic");
        r
    }

    fn frac_normalize(&self, num: Vec<Repr>, den: Vec<Repr>) -> Repr {
        let p = self.parent();
        let num = p.pv_trim(num);
        let den = p.pv_trim(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return self.zero();
        }
        let g = p.pv_gcd(&num, &den).expect("gcd of nonzero polynomials");
        let (num, den) = if g.len() > 1 {
            let (qn, _) = p.pv_divrem(&num, &g).unwrap();
            let (qd, _) = p.pv_divrem(&den, &g).unwrap();
            (qn, qd)
        } else {
            (num, den)
        };
        let lc = den.last().unwrap();
        if p.is_one(lc) {
            Repr::Frac(num, den)
        } else {
            let li = p.inv(lc).expect("leading coefficient nonzero");
            Repr::Frac(p.pv_mul_scalar(&num, &li), p.pv_mul_scalar(&den, &li))
        }
    }

    // ----- polynomial vectors with coefficients at this level -----

    pub(crate) fn pv_trim(&self, mut v: Vec<Repr>) -> Vec<Repr> {
        while v.last().is_some_and(|c| self.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub(crate) fn pv_add(&self, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(|| self.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| self.zero());
            out.push(self.add(&x, &y));
        }
        self.pv_trim(out)
    }

    pub(crate) fn pv_neg(&self, a: &[Repr]) -> Vec<Repr> {
        a.iter().map(|c| self.neg(c)).collect()
    }

    pub(crate) fn pv_sub(&self, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        self.pv_add(a, &self.pv_neg(b))
    }

    pub(crate) fn pv_mul(&self, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.is_zero(y) {
                    continue;
                }
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.pv_trim(out)
    }

    pub(crate) fn pv_mul_scalar(&self, a: &[Repr], c: &Repr) -> Vec<Repr> {
        if self.is_zero(c) {
            return vec![];
        }
        a.iter().map(|x| self.mul(x, c)).collect()
    }

    /// Division with remainder; the divisor's leading coefficient is
    /// inverted, so this works for any nonzero divisor over a field.
    pub(crate) fn pv_divrem(
        &self,
        a: &[Repr],
        b: &[Repr],
    ) -> Result<(Vec<Repr>, Vec<Repr>), AlgebraError> {
        let b = self.pv_trim(b.to_vec());
        if b.is_empty() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = self.pv_trim(a.to_vec());
        if r.len() < b.len() {
            return Ok((vec![], r));
        }
        let lb = self.inv(b.last().unwrap())?;
        let mut q = vec![self.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let k = r.len() - b.len();
            let c = self.mul(r.last().unwrap(), &lb);
            q[k] = c.clone();
            for (i, bc) in b.iter().enumerate() {
                let t = self.mul(&c, bc);
                r[k + i] = self.sub(&r[k + i], &t);
            }
            r = self.pv_trim(r);
        }
        Ok((self.pv_trim(q), r))
    }

    /// Monic gcd; errors only on division failures inside (asserted
    /// reducible steps).
    pub(crate) fn pv_gcd(&self, a: &[Repr], b: &[Repr]) -> Result<Vec<Repr>, AlgebraError> {
        let mut x = self.pv_trim(a.to_vec());
        let mut y = self.pv_trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = self.pv_divrem(&x, &y)?;
            x = y;
            y = r;
        }
        if x.is_empty() {
            return Ok(x);
        }
        let li = self.inv(x.last().unwrap())?;
        Ok(self.pv_mul_scalar(&x, &li))
    }

    /// Extended Euclid: returns monic `g` and `s, t` with `s a + t b = g`.
    pub(crate) fn pv_exgcd(
        &self,
        a: &[Repr],
        b: &[Repr],
    ) -> Result<(Vec<Repr>, Vec<Repr>, Vec<Repr>), AlgebraError> {
        let mut r0 = self.pv_trim(a.to_vec());
        let mut r1 = self.pv_trim(b.to_vec());
        let mut s0 = vec![self.one()];
        let mut s1: Vec<Repr> = vec![];
        let mut t0: Vec<Repr> = vec![];
        let mut t1 = vec![self.one()];
        while !r1.is_empty() {
            let (q, r) = self.pv_divrem(&r0, &r1)?;
            let ns = self.pv_sub(&s0, &self.pv_mul(&q, &s1));
            let nt = self.pv_sub(&t0, &self.pv_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_empty() {
            return Ok((r0, s0, t0));
        }
        let li = self.inv(r0.last().unwrap())?;
        Ok((
            self.pv_mul_scalar(&r0, &li),
            self.pv_mul_scalar(&s0, &li),
            self.pv_mul_scalar(&t0, &li),
        ))
    }

}

/// Controls whether algebraic step minimal polynomials are factored to
/// verify irreducibility at tower construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibilityPolicy {
    /// Always factor (fails construction on reducible input).
    Check,
    /// Never factor; record the step as asserted.
    Assert,
    /// Factor when the total algebraic degree stays at or below the bound.
    Auto { degree_bound: usize },
}

impl Default for IrreducibilityPolicy {
    fn default() -> Self {
        IrreducibilityPolicy::Auto { degree_bound: 24 }
    }
}

impl FieldTower {
    pub fn new(base: PrimeField) -> Self {
        FieldTower { inner: Arc::new(TowerInner { base, steps: vec![] }) }
    }

    pub fn rationals() -> Self {
        Self::new(PrimeField::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        Ok(Self::new(PrimeField::fp(p)?))
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }

    pub fn num_steps(&self) -> usize {
        self.inner.steps.len()
    }

    pub fn step_name(&self, i: usize) -> &str {
        &self.inner.steps[i].name
    }

    pub fn step_names(&self) -> Vec<&str> {
        self.inner.steps.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn is_step_transcendental(&self, i: usize) -> bool {
        matches!(self.inner.steps[i].data, StepData::Transcendental)
    }

    pub fn step_degree(&self, i: usize) -> Option<usize> {
        self.inner.steps[i].degree()
    }

    pub fn step_status(&self, i: usize) -> Option<IrreducibilityStatus> {
        match &self.inner.steps[i].data {
            StepData::Transcendental => None,
            StepData::Algebraic { status, .. } => Some(*status),
        }
    }

    /// Names of algebraic steps whose irreducibility was asserted, not checked.
    pub fn unverified_steps(&self) -> Vec<String> {
        self.inner
            .steps
            .iter()
            .filter(|s| {
                matches!(s.data, StepData::Algebraic { status: IrreducibilityStatus::Asserted, .. })
            })
            .map(|s| s.name.clone())
            .collect()
    }

    pub fn num_transcendentals(&self) -> usize {
        self.inner
            .steps
            .iter()
            .filter(|s| matches!(s.data, StepData::Transcendental))
            .count()
    }

    pub(crate) fn ctx(&self) -> Ctx<'_> {
        Ctx { base: &self.inner.base, steps: &self.inner.steps }
    }

    pub(crate) fn ctx_at(&self, level: usize) -> Ctx<'_> {
        Ctx { base: &self.inner.base, steps: &self.inner.steps[..level] }
    }

    /// Adjoin a rational function field in a fresh variable. Transcendental
    /// steps must precede all algebraic steps.
    pub fn extend_transcendental(&self, name: &str) -> Result<FieldTower, AlgebraError> {
        if self
            .inner
            .steps
            .iter()
            .any(|s| matches!(s.data, StepData::Algebraic { .. }))
        {
            return Err(AlgebraError::StepOrder);
        }
        let mut steps = self.inner.steps.clone();
        steps.push(Step { name: name.to_string(), data: StepData::Transcendental });
        Ok(FieldTower { inner: Arc::new(TowerInner { base: self.inner.base, steps }) })
    }

    /// Adjoin a root of a monic polynomial over this tower. Irreducibility
    /// is checked or asserted per the policy.
    pub fn extend_algebraic(
        &self,
        name: &str,
        min_poly: &crate::upoly::UniPoly,
        policy: IrreducibilityPolicy,
    ) -> Result<FieldTower, AlgebraError> {
        if min_poly.tower() != self {
            return Err(AlgebraError::TowerMismatch);
        }
        let deg = min_poly.degree().unwrap_or(0);
        if deg == 0 {
            return Err(AlgebraError::MalformedStep(name.to_string()));
        }
        let ctx = self.ctx();
        if !ctx.is_one(&min_poly.coeff(deg).repr) {
            return Err(AlgebraError::MalformedStep(name.to_string()));
        }
        let would_be_degree: usize = self
            .inner
            .steps
            .iter()
            .filter_map(|s| s.degree())
            .product::<usize>()
            * deg;
        let check = match policy {
            IrreducibilityPolicy::Check => true,
            IrreducibilityPolicy::Assert => false,
            IrreducibilityPolicy::Auto { degree_bound } => {
                // Finite-field and function-field factorization is cheap and
                // complete; only deep rational towers fall back to assertion.
                self.characteristic() != 0 || would_be_degree <= degree_bound
            }
        };
        let status = if deg == 1 {
            IrreducibilityStatus::Verified
        } else if check {
            let factors = crate::factor::factor(min_poly)?;
            if factors.factors.len() != 1 || factors.factors[0].1 != 1 {
                return Err(AlgebraError::ReducibleStep(name.to_string()));
            }
            IrreducibilityStatus::Verified
        } else {
            IrreducibilityStatus::Asserted
        };
        let coeffs: Vec<Repr> = (0..=deg).map(|i| min_poly.coeff(i).repr.clone()).collect();
        let mut steps = self.inner.steps.clone();
        steps.push(Step {
            name: name.to_string(),
            data: StepData::Algebraic { min_poly: coeffs, status },
        });
        Ok(FieldTower { inner: Arc::new(TowerInner { base: self.inner.base, steps }) })
    }

    /// Adjoin a root of a monic polynomial the caller already knows to be
    /// irreducible (e.g. an output of factorization); skips re-checking.
    pub fn extend_algebraic_assume_irreducible(
        &self,
        name: &str,
        min_poly: &crate::upoly::UniPoly,
    ) -> Result<FieldTower, AlgebraError> {
        self.extend_algebraic_with_status(name, min_poly, IrreducibilityStatus::Verified)
    }

    pub(crate) fn extend_algebraic_with_status(
        &self,
        name: &str,
        min_poly: &crate::upoly::UniPoly,
        status: IrreducibilityStatus,
    ) -> Result<FieldTower, AlgebraError> {
        if min_poly.tower() != self {
            return Err(AlgebraError::TowerMismatch);
        }
        let deg = min_poly.degree().unwrap_or(0);
        if deg == 0 || !min_poly.is_monic() {
            return Err(AlgebraError::MalformedStep(name.to_string()));
        }
        let coeffs: Vec<Repr> = (0..=deg).map(|i| min_poly.coeff(i).repr.clone()).collect();
        let mut steps = self.inner.steps.clone();
        steps.push(Step {
            name: name.to_string(),
            data: StepData::Algebraic { min_poly: coeffs, status },
        });
        Ok(FieldTower { inner: Arc::new(TowerInner { base: self.inner.base, steps }) })
    }

    /// True when `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.inner.base == other.inner.base
            && self.inner.steps.len() <= other.inner.steps.len()
            && self.inner.steps[..] == other.inner.steps[..self.inner.steps.len()]
    }

    /// The tower truncated to its first `level` steps.
    pub fn prefix(&self, level: usize) -> FieldTower {
        assert!(level <= self.num_steps());
        FieldTower {
            inner: Arc::new(TowerInner {
                base: self.inner.base,
                steps: self.inner.steps[..level].to_vec(),
            }),
        }
    }

    /// Vector-space degree over a prefix; errors when a transcendental step
    /// lies strictly above the prefix.
    pub fn degree_over(&self, prefix: &FieldTower) -> Result<usize, AlgebraError> {
        if !prefix.is_prefix_of(self) {
            return Err(AlgebraError::TowerMismatch);
        }
        let mut d = 1usize;
        for s in &self.inner.steps[prefix.num_steps()..] {
            match s.degree() {
                Some(k) => d *= k,
                None => return Err(AlgebraError::NotFiniteOverPrefix),
            }
        }
        Ok(d)
    }

    pub fn zero(&self) -> TowerElem {
        TowerElem { tower: self.clone(), repr: self.ctx().zero() }
    }

    pub fn one(&self) -> TowerElem {
        TowerElem { tower: self.clone(), repr: self.ctx().one() }
    }

    pub fn from_i64(&self, n: i64) -> TowerElem {
        TowerElem { tower: self.clone(), repr: self.ctx().from_i64(n) }
    }

    /// The generator adjoined at step `i`, as an element of the full tower.
    pub fn generator(&self, i: usize) -> TowerElem {
        assert!(i < self.num_steps());
        let mut repr = self.ctx_at(i + 1).generator();
        for k in (i + 2)..=self.num_steps() {
            repr = self.ctx_at(k).lift_from_parent(repr);
        }
        TowerElem { tower: self.clone(), repr }
    }

    pub fn generator_by_name(&self, name: &str) -> Option<TowerElem> {
        let i = self.inner.steps.iter().position(|s| s.name == name)?;
        Some(self.generator(i))
    }

    /// The minimal polynomial of step `i` as a polynomial over the prefix
    /// tower below that step.
    pub fn step_min_poly(&self, i: usize) -> Option<crate::upoly::UniPoly> {
        match &self.inner.steps[i].data {
            StepData::Transcendental => None,
            StepData::Algebraic { min_poly, .. } => {
                let prefix = self.prefix(i);
                let coeffs = min_poly
                    .iter()
                    .map(|r| TowerElem { tower: prefix.clone(), repr: r.clone() })
                    .collect();
                Some(crate::upoly::UniPoly::from_coeffs(&prefix, coeffs))
            }
        }
    }
}

/// The four field operations, for the checked entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked tower arithmetic: verifies the operands share a tower and that
/// division has a nonzero divisor.
pub fn tower_arith(a: &TowerElem, b: &TowerElem, op: ArithOp) -> Result<TowerElem, AlgebraError> {
    if a.tower != b.tower {
        return Err(AlgebraError::TowerMismatch);
    }
    let ctx = a.tower.ctx();
    let repr = match op {
        ArithOp::Add => ctx.add(&a.repr, &b.repr),
        ArithOp::Sub => ctx.sub(&a.repr, &b.repr),
        ArithOp::Mul => ctx.mul(&a.repr, &b.repr),
        ArithOp::Div => ctx.div(&a.repr, &b.repr)?,
    };
    Ok(TowerElem { tower: a.tower.clone(), repr })
}

impl TowerElem {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.tower.ctx().is_zero(&self.repr)
    }

    pub fn is_one(&self) -> bool {
        self.tower.ctx().is_one(&self.repr)
    }

    fn binop(&self, b: &TowerElem, f: impl Fn(&Ctx, &Repr, &Repr) -> Repr) -> TowerElem {
        assert!(self.tower == b.tower, "tower mismatch");
        TowerElem { tower: self.tower.clone(), repr: f(&self.tower.ctx(), &self.repr, &b.repr) }
    }

    pub fn add(&self, b: &TowerElem) -> TowerElem {
        self.binop(b, |c, x, y| c.add(x, y))
    }

    pub fn sub(&self, b: &TowerElem) -> TowerElem {
        self.binop(b, |c, x, y| c.sub(x, y))
    }

    pub fn mul(&self, b: &TowerElem) -> TowerElem {
        self.binop(b, |c, x, y| c.mul(x, y))
    }

    pub fn neg(&self) -> TowerElem {
        TowerElem { tower: self.tower.clone(), repr: self.tower.ctx().neg(&self.repr) }
    }

    pub fn inv(&self) -> Result<TowerElem, AlgebraError> {
        Ok(TowerElem { tower: self.tower.clone(), repr: self.tower.ctx().inv(&self.repr)? })
    }

    pub fn div(&self, b: &TowerElem) -> Result<TowerElem, AlgebraError> {
        tower_arith(self, b, ArithOp::Div)
    }

    pub fn pow(&self, e: i64) -> Result<TowerElem, AlgebraError> {
        let ctx = self.tower.ctx();
        if e >= 0 {
            Ok(TowerElem { tower: self.tower.clone(), repr: ctx.pow_u64(&self.repr, e as u64) })
        } else {
            let inv = self.inv()?;
            Ok(TowerElem {
                tower: self.tower.clone(),
                repr: ctx.pow_u64(&inv.repr, e.unsigned_abs()),
            })
        }
    }

    /// Re-express in a larger tower that has this element's tower as a prefix.
    pub fn promote(&self, to: &FieldTower) -> Result<TowerElem, AlgebraError> {
        if !self.tower.is_prefix_of(to) {
            return Err(AlgebraError::TowerMismatch);
        }
        let mut repr = self.repr.clone();
        for k in (self.tower.num_steps() + 1)..=to.num_steps() {
            repr = to.ctx_at(k).lift_from_parent(repr);
        }
        Ok(TowerElem { tower: to.clone(), repr })
    }

    /// Project onto a prefix tower if the element is constant across the
    /// removed steps; `None` otherwise.
    pub fn try_restrict(&self, to: &FieldTower) -> Option<TowerElem> {
        if !to.is_prefix_of(&self.tower) {
            return None;
        }
        let mut repr = self.repr.clone();
        for k in ((to.num_steps() + 1)..=self.tower.num_steps()).rev() {
            repr = self.tower.ctx_at(k).try_to_parent(&repr)?;
        }
        Some(TowerElem { tower: to.clone(), repr })
    }

    /// Canonical rendering with the fixed generator order of the tower.
    pub fn render(&self) -> String {
        render_repr(&self.tower.ctx(), &self.repr)
    }

    /// Lift a base-field scalar into a tower.
    pub fn from_scalar(tower: &FieldTower, s: crate::scalar::Scalar) -> TowerElem {
        TowerElem { tower: tower.clone(), repr: tower.ctx().lift_base(Repr::Base(s)) }
    }

    /// Project down to a base-field scalar when the element is a constant.
    pub fn to_scalar(&self) -> Option<crate::scalar::Scalar> {
        let mut repr = self.repr.clone();
        for k in (1..=self.tower.num_steps()).rev() {
            repr = self.tower.ctx_at(k).try_to_parent(&repr)?;
        }
        match repr {
            Repr::Base(s) => Some(s),
            _ => unreachable!(),
        }
    }

    /// For an element whose tower ends in a transcendental step: the
    /// numerator and denominator as polynomials over the parent tower.
    pub fn top_frac_parts(&self) -> (crate::upoly::UniPoly, crate::upoly::UniPoly) {
        let k = self.tower.num_steps();
        assert!(k > 0 && self.tower.is_step_transcendental(k - 1));
        let parent = self.tower.prefix(k - 1);
        let Repr::Frac(num, den) = &self.repr else { unreachable!() };
        let wrap = |v: &[Repr]| {
            crate::upoly::UniPoly::from_coeffs(
                &parent,
                v.iter().map(|r| TowerElem { tower: parent.clone(), repr: r.clone() }).collect(),
            )
        };
        (wrap(num), wrap(den))
    }

    /// For an element whose tower ends in an algebraic step: coefficients
    /// over the parent tower, padded to the step degree.
    pub fn top_alg_coords(&self) -> Vec<TowerElem> {
        let k = self.tower.num_steps();
        let d = self.tower.step_degree(k - 1).expect("algebraic top step");
        let parent = self.tower.prefix(k - 1);
        let Repr::Poly(coeffs) = &self.repr else { unreachable!() };
        (0..d)
            .map(|i| match coeffs.get(i) {
                Some(r) => TowerElem { tower: parent.clone(), repr: r.clone() },
                None => parent.zero(),
            })
            .collect()
    }

    /// Write a denominator-free element as a polynomial in the step
    /// generators: monomials are exponent vectors indexed by step, with
    /// base-field scalar coefficients. `None` when a fraction layer has a
    /// nontrivial denominator.
    pub fn as_generator_polynomial(&self) -> Option<Vec<(Vec<u32>, crate::scalar::Scalar)>> {
        fn go(
            ctx: &Ctx,
            r: &Repr,
            level: usize,
            out: &mut Vec<(Vec<u32>, crate::scalar::Scalar)>,
            exps: &mut Vec<u32>,
        ) -> bool {
            match r {
                Repr::Base(s) => {
                    if !ctx.base.is_zero(s) {
                        out.push((exps.clone(), s.clone()));
                    }
                    true
                }
                Repr::Poly(v) => {
                    let p = ctx.parent();
                    for (i, c) in v.iter().enumerate() {
                        exps[level - 1] = i as u32;
                        if !go(&p, c, level - 1, out, exps) {
                            return false;
                        }
                    }
                    exps[level - 1] = 0;
                    true
                }
                Repr::Frac(n, d) => {
                    let p = ctx.parent();
                    if d.len() != 1 || !p.is_one(&d[0]) {
                        return false;
                    }
                    for (i, c) in n.iter().enumerate() {
                        exps[level - 1] = i as u32;
                        if !go(&p, c, level - 1, out, exps) {
                            return false;
                        }
                    }
                    exps[level - 1] = 0;
                    true
                }
            }
        }
        let k = self.tower.num_steps();
        let mut out = vec![];
        let mut exps = vec![0u32; k];
        let ctx = self.tower.ctx();
        // Contexts for `go` are derived by peeling from the top.
        if go(&ctx, &self.repr, k, &mut out, &mut exps) {
            Some(out)
        } else {
            None
        }
    }

    /// The denominator-free test: true when every fraction layer in the
    /// normal form has denominator 1.
    pub fn is_denominator_free(&self) -> bool {
        fn go(ctx: &Ctx, r: &Repr) -> bool {
            match r {
                Repr::Base(_) => true,
                Repr::Poly(v) => {
                    let p = ctx.parent();
                    v.iter().all(|c| go(&p, c))
                }
                Repr::Frac(n, d) => {
                    let p = ctx.parent();
                    d.len() == 1 && p.is_one(&d[0]) && n.iter().all(|c| go(&p, c))
                }
            }
        }
        go(&self.tower.ctx(), &self.repr)
    }
}

/// Build an element of `tower` (algebraic top step) from parent-level
/// coefficients: `sum coeffs[i] * gen^i`.
pub fn elem_from_alg_coords(tower: &FieldTower, coeffs: &[TowerElem]) -> TowerElem {
    let k = tower.num_steps();
    let d = tower.step_degree(k - 1).expect("algebraic top step");
    assert!(coeffs.len() <= d);
    let parent_ctx = tower.ctx_at(k - 1);
    let v: Vec<Repr> = coeffs.iter().map(|c| c.repr.clone()).collect();
    TowerElem { tower: tower.clone(), repr: Repr::Poly(parent_ctx.pv_trim(v)) }
}

/// Build an element of `tower` (transcendental top step) as `num/den` of
/// polynomials over the parent tower.
pub fn elem_from_frac_parts(
    tower: &FieldTower,
    num: &crate::upoly::UniPoly,
    den: &crate::upoly::UniPoly,
) -> Result<TowerElem, AlgebraError> {
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    let k = tower.num_steps();
    assert!(k > 0 && tower.is_step_transcendental(k - 1));
    let g = tower.generator(k - 1);
    let n = num.eval(&g);
    let d = den.eval(&g);
    n.div(&d)
}

fn render_poly(ctx: &Ctx, coeffs: &[Repr], var: &str) -> String {
    let p = ctx.parent();
    let mut parts: Vec<String> = vec![];
    for (i, c) in coeffs.iter().enumerate() {
        if p.is_zero(c) {
            continue;
        }
        let cs = render_repr(&p, c);
        let needs_paren = cs.contains('+') || cs.contains(' ') || cs.contains('/');
        let cs = if needs_paren { format!("({cs})") } else { cs };
        let term = match i {
            0 => cs,
            1 if p.is_one(c) => var.to_string(),
            1 => format!("{cs}*{var}"),
            _ if p.is_one(c) => format!("{var}^{i}"),
            _ => format!("{cs}*{var}^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn render_repr(ctx: &Ctx, r: &Repr) -> String {
    match r {
        Repr::Base(s) => ctx.base.render(s),
        Repr::Poly(v) => {
            let name = &ctx.steps.last().unwrap().name;
            render_poly(ctx, v, name)
        }
        Repr::Frac(n, d) => {
            let name = &ctx.steps.last().unwrap().name;
            let p = ctx.parent();
            let ns = render_poly(ctx, n, name);
            if d.len() == 1 && p.is_one(&d[0]) {
                ns
            } else {
                let ds = render_poly(ctx, d, name);
                format!("({ns})/({ds})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upoly::UniPoly;

    fn q_i() -> FieldTower {
        let q = FieldTower::rationals();
        let mp = UniPoly::from_i64_coeffs(&q, &[1, 0, 1]); // t^2 + 1
        q.extend_algebraic("i", &mp, IrreducibilityPolicy::Check).unwrap()
    }

    #[test]
    fn gaussian_integers_product() {
        // (1+i)(1-i) = 2, reduced mod i^2 + 1.
        let f = q_i();
        let i = f.generator(0);
        let one = f.one();
        let a = one.add(&i);
        let b = one.sub(&i);
        let prod = tower_arith(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(prod, f.from_i64(2));
    }

    #[test]
    fn multiplicative_identity() {
        let f = q_i();
        let a = f.generator(0).add(&f.from_i64(7));
        assert_eq!(tower_arith(&a, &f.one(), ArithOp::Mul).unwrap(), a);
    }

    #[test]
    fn division_in_f5() {
        let f = FieldTower::prime(5).unwrap();
        let q = tower_arith(&f.from_i64(2), &f.from_i64(3), ArithOp::Div).unwrap();
        assert_eq!(q, f.from_i64(4));
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f = q_i();
        let e = tower_arith(&f.one(), &f.zero(), ArithOp::Div);
        assert_eq!(e.unwrap_err(), AlgebraError::DivisionByZero);
        let g = FieldTower::rationals();
        let e = tower_arith(&f.one(), &g.one(), ArithOp::Add);
        assert_eq!(e.unwrap_err(), AlgebraError::TowerMismatch);
    }

    #[test]
    fn function_field_normal_form() {
        // (x^2 - 1)/(x - 1) reduces to x + 1.
        let k = FieldTower::rationals().extend_transcendental("x").unwrap();
        let x = k.generator(0);
        let num = x.mul(&x).sub(&k.one());
        let den = x.sub(&k.one());
        let v = num.div(&den).unwrap();
        assert_eq!(v, x.add(&k.one()));
        assert_eq!(v.render(), "1 + x");
    }

    #[test]
    fn inverse_in_extension() {
        let f = q_i();
        let a = f.generator(0).add(&f.from_i64(2)); // 2 + i
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn promote_and_restrict() {
        let q = FieldTower::rationals();
        let f = q_i();
        let two = q.from_i64(2);
        let up = two.promote(&f).unwrap();
        assert_eq!(up, f.from_i64(2));
        assert_eq!(up.try_restrict(&q).unwrap(), two);
        assert!(f.generator(0).try_restrict(&q).is_none());
    }

    #[test]
    fn step_order_enforced() {
        let f = q_i();
        assert_eq!(f.extend_transcendental("x").unwrap_err(), AlgebraError::StepOrder);
    }
}
