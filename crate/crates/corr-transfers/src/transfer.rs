//! Canonical transfers G(Y) -> G(X) attached to finite correspondences:
//! sums of traces for the additive group, products of norms for the
//! multiplicative group, with a symmetric-power cross-check; plus the
//! radicial transfer, the characterization probe, and the functoriality
//! harness.


use corr_algebra::{trace_and_norm, FieldTower, TowerElem};
use corr_ideals::{buchberger, normal_form, MultiPoly, TermOrder};

use crate::correspondence::{compose, AffineVariety, Correspondence, GenericCycle};
use crate::error::TransferError;
use crate::pushforward::{
    algebra_from_extension, extension_coords, pushforward, GroupPlugin,
};

/// The value of a transfer: one element of K(X) per plugin factor, plus the
/// regularity note (whether the normal form is denominator-free in the
/// designated coordinates).
#[derive(Debug, Clone, PartialEq)]
pub struct TransferResult {
    pub values: Vec<TowerElem>,
    pub regular: bool,
}

/// Options controlling the symmetric-power cross-check.
#[derive(Debug, Clone, Copy)]
pub struct TransferOptions {
    /// Cross-check transfers through the orbit-basis pushforward whenever
    /// the point degree is at most this bound.
    pub sympower_degree_bound: usize,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions { sympower_degree_bound: 6 }
    }
}

fn int_elem(k: &FieldTower, n: i64) -> TowerElem {
    k.from_i64(n)
}

/// Evaluate one plugin factor along a cycle.
fn transfer_factor(
    cycle: &GenericCycle,
    kind: &GroupPlugin,
    g: &MultiPoly,
    opts: &TransferOptions,
) -> Result<TowerElem, TransferError> {
    let k = cycle.base.clone();
    match kind {
        GroupPlugin::Ga => {
            let mut acc = k.zero();
            for p in &cycle.points {
                let gi = g.eval(&p.coords);
                let (tr, _) = trace_and_norm(&gi, &k)?;
                cross_check(&gi, &p.field, &k, kind, &tr, opts)?;
                acc = acc.add(&tr.mul(&int_elem(&k, p.mult)));
            }
            Ok(acc)
        }
        GroupPlugin::Gm | GroupPlugin::MuN(_) => {
            let mut acc = k.one();
            for p in &cycle.points {
                let gi = g.eval(&p.coords);
                if gi.is_zero() {
                    return Err(TransferError::NotInvertibleAtPoint);
                }
                let (_, nm) = trace_and_norm(&gi, &k)?;
                cross_check(&gi, &p.field, &k, kind, &nm, opts)?;
                let powed = nm.pow(p.mult)?;
                acc = acc.mul(&powed);
            }
            if let GroupPlugin::MuN(n) = kind {
                let pw = acc.pow(*n as i64)?;
                if !pw.is_one() {
                    return Err(TransferError::NotInvertibleAtPoint);
                }
            }
            Ok(acc)
        }
        GroupPlugin::Product(_) => unreachable!("factors are primitive"),
    }
}

/// Oracle agreement: the norm/trace route must match the symmetric-power
/// pushforward route for small degrees. A mismatch is an engine defect, so
/// it panics rather than returning a value.
fn cross_check(
    gi: &TowerElem,
    l: &FieldTower,
    k: &FieldTower,
    kind: &GroupPlugin,
    expected: &TowerElem,
    opts: &TransferOptions,
) -> Result<(), TransferError> {
    let deg = l.degree_over(k)?;
    if deg > opts.sympower_degree_bound {
        return Ok(());
    }
    let alg = algebra_from_extension(l, k)?;
    let coords = extension_coords(gi, k)?;
    let shadow_kind = match kind {
        GroupPlugin::MuN(_) => &GroupPlugin::Gm,
        other => other,
    };
    let pushed = pushforward(&alg, shadow_kind, &coords)?;
    assert!(
        pushed == *expected,
        "symmetric-power pushforward disagrees with the multiplication-matrix route"
    );
    Ok(())
}

/// The canonical transfer of `g` along a generic cycle: a sum of traces for
/// the additive group, a product of norms for the multiplicative one,
/// componentwise for products. Each `g` is a polynomial on the target.
pub fn transfer_cycle(
    cycle: &GenericCycle,
    plugin: &GroupPlugin,
    g: &[MultiPoly],
    opts: &TransferOptions,
) -> Result<TransferResult, TransferError> {
    let factors = plugin.factors();
    if factors.len() != g.len() {
        return Err(TransferError::PluginArity { expected: factors.len(), got: g.len() });
    }
    let mut values = vec![];
    for (kind, gk) in factors.iter().zip(g) {
        values.push(transfer_factor(cycle, kind, gk, opts)?);
    }
    let regular = values.iter().all(|v| v.is_denominator_free());
    Ok(TransferResult { values, regular })
}

/// Transfer along a correspondence (through its generic fiber).
pub fn transfer(
    alpha: &Correspondence,
    plugin: &GroupPlugin,
    g: &[MultiPoly],
    opts: &TransferOptions,
) -> Result<TransferResult, TransferError> {
    let cycle = alpha.generic_fiber()?;
    transfer_cycle(&cycle, plugin, g, opts)
}

/// Re-express a K(Y)-value as a polynomial function on Y. Succeeds exactly
/// when the normal form is denominator-free in the model coordinates.
pub fn regularize_on(
    value: &TowerElem,
    variety: &AffineVariety,
) -> Result<MultiPoly, TransferError> {
    let model = variety.model();
    if value.tower() != &model.field {
        return Err(TransferError::NotRegularizable);
    }
    let Some(monomials) = value.as_generator_polynomial() else {
        return Err(TransferError::NotRegularizable);
    };
    // Map tower steps onto variety variables by name; steps inherited from
    // the base field keep exponent zero.
    let ring = variety.ring().clone();
    let base_steps = variety.base().num_steps();
    let field = &model.field;
    let mut step_to_var: Vec<Option<usize>> = vec![None; field.num_steps()];
    for (i, slot) in step_to_var.iter_mut().enumerate().skip(base_steps) {
        *slot = ring.var_index(field.step_name(i));
    }
    let mut out = ring.zero();
    for (exps, scalar) in monomials {
        let mut mono = vec![0u32; ring.num_vars()];
        for (step, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match step_to_var[step] {
                Some(v) => mono[v] = e,
                None => return Err(TransferError::NotRegularizable),
            }
        }
        out = out.add(&MultiPoly::from_terms(
            &ring,
            vec![(mono, TowerElem::from_scalar(ring.tower(), scalar))],
        ));
    }
    // Paranoia: the polynomial must evaluate back to the value.
    if !out.eval(&model.generic_point).sub(value).is_zero() {
        return Err(TransferError::NotRegularizable);
    }
    Ok(out)
}

/// Functoriality instance: alpha* (beta* g) = (beta o alpha)* g, evaluated
/// exactly on both sides.
pub fn functoriality_check(
    alpha: &Correspondence,
    beta: &Correspondence,
    plugin: &GroupPlugin,
    g: &[MultiPoly],
    opts: &TransferOptions,
) -> Result<bool, TransferError> {
    // Right side: transfer along the composed cycle.
    let composed = compose(alpha, beta)?;
    let rhs = transfer_cycle(&composed, plugin, g, opts)?;
    // Left side: beta* g as functions on Y, then alpha*.
    let beta_g = transfer(beta, plugin, g, opts)?;
    let mut pulled = vec![];
    for v in &beta_g.values {
        pulled.push(regularize_on(v, beta.source())?);
    }
    let lhs = transfer(alpha, plugin, &pulled, opts)?;
    Ok(lhs.values == rhs.values)
}

// ----- radicial transfers -----

/// A single-component correspondence whose generic fiber is one purely
/// inseparable point.
#[derive(Debug, Clone)]
pub struct RadicialDatum {
    pub corr: Correspondence,
    pub cycle: GenericCycle,
    pub degree: usize,
}

/// Purely inseparable test, generator-wise on the tower presentation: every
/// step beyond the base has minimal polynomial `t^(p^e) - a` (or degree 1).
fn purely_inseparable(l: &FieldTower, k: &FieldTower) -> bool {
    let p = l.characteristic();
    for i in k.num_steps()..l.num_steps() {
        let Some(mp) = l.step_min_poly(i) else {
            return false;
        };
        let d = mp.degree().unwrap();
        if d == 1 {
            continue;
        }
        if p == 0 {
            return false;
        }
        let mut n = d;
        while n > 1 && n % p as usize == 0 {
            n /= p as usize;
        }
        if n != 1 {
            return false;
        }
        for j in 1..d {
            if !mp.coeff(j).is_zero() {
                return false;
            }
        }
    }
    true
}

impl RadicialDatum {
    /// Validate and package a radicial correspondence: one component, one
    /// generic point, purely inseparable residue extension of p-power (or
    /// trivial) degree.
    pub fn new(corr: &Correspondence) -> Result<RadicialDatum, TransferError> {
        if corr.components().len() != 1 {
            return Err(TransferError::NotRadicial("more than one component".into()));
        }
        let cycle = corr.generic_fiber()?;
        if cycle.points.len() != 1 {
            return Err(TransferError::NotRadicial("generic fiber is not one point".into()));
        }
        let k = &cycle.base;
        let l = &cycle.points[0].field;
        let d = l.degree_over(k)?;
        let p = k.characteristic();
        let d_is_p_power = {
            let mut n = d;
            if p > 0 {
                while n > 1 && n % p as usize == 0 {
                    n /= p as usize;
                }
            }
            n == 1
        };
        if !d_is_p_power {
            return Err(TransferError::NotRadicial(format!(
                "degree {d} is not a power of the characteristic"
            )));
        }
        if !purely_inseparable(l, k) {
            return Err(TransferError::NotRadicial(
                "residue extension is not purely inseparable".into(),
            ));
        }
        Ok(RadicialDatum { corr: corr.clone(), cycle, degree: d })
    }

    pub fn base(&self) -> &FieldTower {
        &self.cycle.base
    }

    pub fn point_field(&self) -> &FieldTower {
        &self.cycle.points[0].field
    }
}

/// The radicial transfer t_V(g): the unique h over K(X) with
/// p^* h = d . q^* g, computed by descending `d . g(y)` through the tower;
/// verified against the canonical transfer.
pub fn radicial_transfer(
    datum: &RadicialDatum,
    plugin: &GroupPlugin,
    g: &[MultiPoly],
    opts: &TransferOptions,
) -> Result<TransferResult, TransferError> {
    let factors = plugin.factors();
    if factors.len() != g.len() {
        return Err(TransferError::PluginArity { expected: factors.len(), got: g.len() });
    }
    let k = datum.base().clone();
    let point = &datum.cycle.points[0];
    let d = datum.degree;
    let mut values = vec![];
    for (kind, gk) in factors.iter().zip(g) {
        let gy = gk.eval(&point.coords);
        let dq = match kind {
            GroupPlugin::Ga => gy.mul(&point.field.from_i64(d as i64)),
            GroupPlugin::Gm | GroupPlugin::MuN(_) => {
                if gy.is_zero() {
                    return Err(TransferError::NotInvertibleAtPoint);
                }
                gy.pow(d as i64)?
            }
            GroupPlugin::Product(_) => unreachable!(),
        };
        // d . q^* g lies in the subfield K(X): read it off the tower.
        let h = dq.try_restrict(&k).ok_or(TransferError::NotInSubfield)?;
        // p^*(t_V(g)) = d . q^*(g) exactly.
        assert!(
            h.promote(&point.field).unwrap() == dq,
            "radicial descent must invert the pullback"
        );
        values.push(h);
    }
    // This h coincides with the canonical transfer [V]^* g.
    let canonical = transfer_cycle(&datum.cycle, plugin, g, opts)?;
    assert!(
        canonical.values == values,
        "radicial transfer must agree with the canonical transfer"
    );
    let regular = values.iter().all(|v| v.is_denominator_free());
    Ok(TransferResult { values, regular })
}

/// One row of the characterization probe: does a claimed transfer value
/// satisfy the radicial identity?
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub label: String,
    pub passed: bool,
}

/// Check a claimed assignment of transfer values against t_V on a corpus
/// of radicial data; reports all failures.
pub fn characterization_probe(
    entries: &[(RadicialDatum, GroupPlugin, Vec<MultiPoly>, Vec<TowerElem>)],
    opts: &TransferOptions,
) -> Result<Vec<ProbeRow>, TransferError> {
    let mut rows = vec![];
    for (i, (datum, plugin, g, claimed)) in entries.iter().enumerate() {
        let tv = radicial_transfer(datum, plugin, g, opts)?;
        rows.push(ProbeRow {
            label: format!("entry {i}: [{}]", datum.corr.name()),
            passed: &tv.values == claimed,
        });
    }
    Ok(rows)
}

/// Outcome of the dominant-injectivity instance check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectivityOutcome {
    /// The premise fails: the two functions differ at the generic point.
    PremiseFails,
    /// Premise and conclusion hold: equal generically and equal modulo the
    /// ideal.
    Agrees,
    /// A counterexample to injectivity (never produced on reduced input).
    Disagrees,
}

/// Instance of the dominant-injectivity statement on a reduced affine Y: if
/// two plugin points agree at the generic point they agree as functions.
pub fn dominant_injectivity_check(
    y: &AffineVariety,
    g: &MultiPoly,
    h: &MultiPoly,
) -> Result<InjectivityOutcome, TransferError> {
    let model = y.model();
    let gv = g.eval(&model.generic_point);
    let hv = h.eval(&model.generic_point);
    if gv != hv {
        return Ok(InjectivityOutcome::PremiseFails);
    }
    let diff = g.sub(h);
    if diff.is_zero() {
        return Ok(InjectivityOutcome::Agrees);
    }
    let gb = buchberger(y.ideal(), TermOrder::DegRevLex)?;
    if normal_form(&diff, &gb, TermOrder::DegRevLex).is_zero() {
        Ok(InjectivityOutcome::Agrees)
    } else {
        Ok(InjectivityOutcome::Disagrees)
    }
}

/// Specialize a value of K(X) (X of model dimension 1) at a closed base
/// point x = c; `None` over poles.
pub fn specialize_value(v: &TowerElem, c: &TowerElem) -> Option<TowerElem> {
    let kx = v.tower().clone();
    assert_eq!(kx.num_steps(), kx.num_transcendentals(), "pure function field expected");
    let (num, den) = v.top_frac_parts();
    let dc = den.eval(c);
    if dc.is_zero() {
        return None;
    }
    Some(num.eval(c).div(&dc).unwrap())
}

/// Build the graph-pullback sanity value: transfers along graphs are plain
/// substitution.
pub fn pullback_along_graph(
    f: &Correspondence,
    g: &[MultiPoly],
) -> Result<Vec<TowerElem>, TransferError> {
    let cycle = f.generic_fiber()?;
    if cycle.points.len() != 1 || cycle.points[0].field != cycle.base {
        return Err(TransferError::NotRadicial("not a graph".into()));
    }
    Ok(g.iter().map(|gk| gk.eval(&cycle.points[0].coords)).collect())
}

