//! Affine varieties over an exact base field, finite correspondences as
//! weighted component ideals, the generic-fiber normal form, degrees, and
//! composition via length-weighted pullback.

use std::sync::Arc;

use corr_algebra::{
    minimal_polynomial, FieldTower, IrreducibilityPolicy, Matrix, TowerElem,
    UniPoly,
};
use corr_ideals::{
    buchberger, decompose_zero_dim, fiber_ideal, is_zero_dimensional, quotient_basis, MultiPoly,
    PolyRing, TermOrder,
};

use crate::error::TransferError;

/// The designated function-field model of a variety: the tower K(X) built
/// from its independent (transcendental) variables and the dependent ones,
/// together with the generic point coordinates (one per variety variable).
#[derive(Debug, Clone)]
pub struct FunctionFieldModel {
    pub field: FieldTower,
    pub generic_point: Vec<TowerElem>,
}

/// An affine variety over the base field: named variables and a defining
/// ideal. Integrality is declared; the engine checks the consequences it
/// needs.
#[derive(Debug, Clone)]
pub struct AffineVariety {
    name: String,
    ring: PolyRing,
    ideal: Vec<MultiPoly>,
    declared_integral: bool,
    model: Option<FunctionFieldModel>,
    /// Provenance notes (e.g. asserted irreducibility in the model tower).
    flags: Vec<String>,
}

impl AffineVariety {
    /// A variety with an automatically derived function-field model: each
    /// variable in order is made dependent when a defining relation
    /// resolves it over the part already built, else transcendental.
    pub fn new(
        name: &str,
        base: &FieldTower,
        vars: &[&str],
        ideal: Vec<MultiPoly>,
        policy: IrreducibilityPolicy,
    ) -> Result<AffineVariety, TransferError> {
        let ring = PolyRing::new(base, vars);
        for g in &ideal {
            if g.ring() != &ring {
                return Err(TransferError::NoModel("ideal not in the variety ring".into()));
            }
            if let Some(0) = g.total_degree() {
                return Err(TransferError::NoModel("ideal contains a unit".into()));
            }
        }
        let mut flags = vec![];
        let model = derive_model(&ring, &ideal, policy, &mut flags)?;
        Ok(AffineVariety {
            name: name.to_string(),
            ring,
            ideal,
            declared_integral: true,
            model: Some(model),
            flags,
        })
    }

    /// The affine point Spec k.
    pub fn point(name: &str, base: &FieldTower) -> AffineVariety {
        AffineVariety {
            name: name.to_string(),
            ring: PolyRing::new(base, &[]),
            ideal: vec![],
            declared_integral: true,
            model: Some(FunctionFieldModel { field: base.clone(), generic_point: vec![] }),
            flags: vec![],
        }
    }

    /// Affine n-space with the given coordinate names.
    pub fn affine_space(
        name: &str,
        base: &FieldTower,
        vars: &[&str],
    ) -> Result<AffineVariety, TransferError> {
        AffineVariety::new(name, base, vars, vec![], IrreducibilityPolicy::default())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn base(&self) -> &FieldTower {
        self.ring.tower()
    }

    pub fn ideal(&self) -> &[MultiPoly] {
        &self.ideal
    }

    pub fn model(&self) -> &FunctionFieldModel {
        self.model.as_ref().expect("model derived at construction")
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    pub fn is_declared_integral(&self) -> bool {
        self.declared_integral
    }

    /// Dimension of the model: the number of transcendental steps.
    pub fn model_dimension(&self) -> usize {
        self.model().field.num_transcendentals() - self.base().num_transcendentals()
    }
}

/// Greedy split of the variables into transcendental and dependent ones,
/// building the function-field tower along the way.
fn derive_model(
    ring: &PolyRing,
    ideal: &[MultiPoly],
    policy: IrreducibilityPolicy,
    flags: &mut Vec<String>,
) -> Result<FunctionFieldModel, TransferError> {
    let base = ring.tower().clone();
    let n = ring.num_vars();
    let vars = ring.vars().iter().map(|s| s.to_string()).collect::<Vec<_>>();
    // Pass 1: resolution order. Each variable is dependent (with a chosen
    // relation) or transcendental.
    #[derive(Clone)]
    enum Kind {
        Trans,
        Dep(usize), // index of the chosen relation
    }
    let mut kind: Vec<Option<Kind>> = vec![None; n];
    let mut order: Vec<usize> = vec![];
    while order.len() < n {
        let mut progressed = false;
        for v in 0..n {
            if kind[v].is_some() {
                continue;
            }
            // A relation usable for v: involves v and otherwise only
            // resolved variables.
            let found = ideal.iter().enumerate().find(|(_, g)| {
                g.degree_in(v).unwrap_or(0) >= 1
                    && (0..n).all(|w| {
                        w == v || kind[w].is_some() || g.degree_in(w).unwrap_or(0) == 0
                    })
            });
            if let Some((gi, _)) = found {
                kind[v] = Some(Kind::Dep(gi));
                order.push(v);
                progressed = true;
            }
        }
        if !progressed {
            // Promote the first unresolved variable to transcendental.
            let v = (0..n).find(|&v| kind[v].is_none()).unwrap();
            kind[v] = Some(Kind::Trans);
            order.push(v);
        }
    }
    // Pass 2: build the tower, transcendentals first.
    let mut field = base.clone();
    let mut coords: Vec<Option<TowerElem>> = vec![None; n];
    for v in 0..n {
        if matches!(kind[v], Some(Kind::Trans)) {
            field = field.extend_transcendental(&vars[v])?;
            coords[v] = Some(field.generator(field.num_steps() - 1));
        }
    }
    // Promote already-assigned transcendental coordinates as the tower
    // grows, then adjoin dependent steps in resolution order.
    for &v in &order {
        let Some(Kind::Dep(gi)) = kind[v].clone() else { continue };
        for c in coords.iter_mut().flatten() {
            *c = c.promote(&field).unwrap_or_else(|_| c.clone());
        }
        let relation = &ideal[gi];
        // Substitute all resolved coordinates, keep v.
        let dv = relation.degree_in(v).unwrap() as usize;
        let mut upoly_coeffs = vec![field.zero(); dv + 1];
        for (m, c) in relation.terms() {
            let mut val = c.promote(&field).expect("base embeds in the model field");
            for (w, &e) in m.iter().enumerate() {
                if w == v || e == 0 {
                    continue;
                }
                let cw = coords[w]
                    .as_ref()
                    .expect("relation only involves resolved variables")
                    .promote(&field)
                    .unwrap();
                val = val.mul(&cw.pow(e as i64).unwrap());
            }
            let deg_v = m[v] as usize;
            upoly_coeffs[deg_v] = upoly_coeffs[deg_v].add(&val);
        }
        let poly = UniPoly::from_coeffs(&field, upoly_coeffs);
        if poly.degree().unwrap_or(0) == 0 {
            return Err(TransferError::NoModel(format!(
                "relation for `{}` degenerates at the generic point",
                vars[v]
            )));
        }
        let (_, monic) = poly.make_monic();
        if monic.degree() == Some(1) {
            coords[v] = Some(monic.coeff(0).neg());
            continue;
        }
        let next = field.extend_algebraic(&vars[v], &monic, policy);
        let next = match next {
            Ok(t) => t,
            Err(corr_algebra::AlgebraError::ReducibleStep(_)) => {
                // The relation is reducible over the tower: the declared
                // variety is not integral along this split. Pick the first
                // irreducible factor (the generic point of one component)
                // and flag the choice.
                flags.push(format!(
                    "relation for `{}` is reducible; a component was chosen",
                    vars[v]
                ));
                let fac = corr_algebra::factor(&monic)?;
                let (f0, _) = &fac.factors[0];
                if f0.degree() == Some(1) {
                    coords[v] = Some(f0.coeff(0).neg());
                    continue;
                }
                field.extend_algebraic(&vars[v], f0, IrreducibilityPolicy::Assert)?
            }
            Err(e) => return Err(e.into()),
        };
        field = next;
        coords[v] = Some(field.generator(field.num_steps() - 1));
    }
    for c in coords.iter_mut().flatten() {
        *c = c.promote(&field).unwrap_or_else(|_| c.clone());
    }
    let generic_point: Vec<TowerElem> =
        coords.into_iter().map(|c| c.expect("all variables resolved")).collect();
    // Every defining relation must vanish at the generic point.
    for g in ideal {
        if !g.eval(&generic_point).is_zero() {
            return Err(TransferError::NoModel(
                "a defining relation does not vanish at the generic point".into(),
            ));
        }
    }
    for name in field.unverified_steps() {
        flags.push(format!("irreducibility of model step `{name}` asserted, not verified"));
    }
    Ok(FunctionFieldModel { field, generic_point })
}

/// A finite correspondence: a formal integer combination of component
/// ideals in the coordinate ring of X x Y.
#[derive(Debug, Clone)]
pub struct Correspondence {
    name: String,
    source: Arc<AffineVariety>,
    target: Arc<AffineVariety>,
    joint_ring: PolyRing,
    components: Vec<(Vec<MultiPoly>, i64)>,
}

/// One point of a generic cycle: a finite extension of K(X), coordinates on
/// Y in it, and an integer multiplicity.
#[derive(Debug, Clone)]
pub struct CyclePoint {
    pub field: FieldTower,
    pub coords: Vec<TowerElem>,
    pub mult: i64,
}

/// The generic fiber of a correspondence: the computational normal form for
/// all transfer evaluation.
#[derive(Debug, Clone)]
pub struct GenericCycle {
    pub base: FieldTower,
    pub points: Vec<CyclePoint>,
}

/// Per-component validation outcome.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub finite_over_source: bool,
    pub integral_generic_fiber: bool,
    pub messages: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub components: Vec<ComponentReport>,
    pub flags: Vec<String>,
}

impl ValidationReport {
    pub fn all_valid(&self) -> bool {
        self.components.iter().all(|c| c.finite_over_source && c.integral_generic_fiber)
    }
}

impl Correspondence {
    /// Build a correspondence from component generator lists written in the
    /// joint coordinates (source variables then target variables).
    pub fn new(
        name: &str,
        source: &Arc<AffineVariety>,
        target: &Arc<AffineVariety>,
        components: Vec<(Vec<MultiPoly>, i64)>,
    ) -> Result<Correspondence, TransferError> {
        let base = source.base().clone();
        if target.base() != &base {
            return Err(TransferError::NoModel("source and target base fields differ".into()));
        }
        let mut joint_vars: Vec<&str> = source.ring().vars();
        for v in target.ring().vars() {
            if joint_vars.contains(&v) {
                return Err(TransferError::NoModel(format!(
                    "variable `{v}` appears in both source and target"
                )));
            }
            joint_vars.push(v);
        }
        let joint_ring = PolyRing::new(&base, &joint_vars);
        for (gens, m) in &components {
            if *m == 0 {
                return Err(TransferError::InvalidComponent(0, "zero multiplicity".into()));
            }
            for g in gens {
                if g.ring() != &joint_ring {
                    return Err(TransferError::NoModel("component not in the joint ring".into()));
                }
            }
        }
        Ok(Correspondence {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            joint_ring,
            components,
        })
    }

    /// The graph of a polynomial morphism X -> Y, given by one polynomial
    /// in the source coordinates per target coordinate.
    pub fn graph(
        name: &str,
        source: &Arc<AffineVariety>,
        target: &Arc<AffineVariety>,
        images: &[MultiPoly],
    ) -> Result<Correspondence, TransferError> {
        assert_eq!(images.len(), target.ring().num_vars());
        let base = source.base().clone();
        let mut joint_vars: Vec<&str> = source.ring().vars();
        joint_vars.extend(target.ring().vars());
        let joint = PolyRing::new(&base, &joint_vars);
        let ns = source.ring().num_vars();
        let lift_source = |g: &MultiPoly| -> MultiPoly {
            MultiPoly::from_terms(
                &joint,
                g.terms()
                    .map(|(m, c)| {
                        let mut mm = m.clone();
                        mm.extend(vec![0; joint.num_vars() - ns]);
                        (mm, c.clone())
                    })
                    .collect(),
            )
        };
        let mut gens = vec![];
        for (j, img) in images.iter().enumerate() {
            assert!(img.ring() == source.ring(), "graph image must live on the source");
            gens.push(joint.var(ns + j).sub(&lift_source(img)));
        }
        // The source's own relations cut the graph inside X x Y.
        for g in source.ideal() {
            gens.push(lift_source(g));
        }
        Correspondence::new(name, source, target, vec![(gens, 1)])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<AffineVariety> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AffineVariety> {
        &self.target
    }

    pub fn joint_ring(&self) -> &PolyRing {
        &self.joint_ring
    }

    pub fn components(&self) -> &[(Vec<MultiPoly>, i64)] {
        &self.components
    }

    /// Scale all multiplicities.
    pub fn scale(&self, m: i64) -> Option<Correspondence> {
        if m == 0 {
            return None;
        }
        let mut c = self.clone();
        for (_, mult) in &mut c.components {
            *mult *= m;
        }
        Some(c)
    }

    /// Formal sum of two correspondences between the same varieties.
    pub fn add(&self, other: &Correspondence) -> Result<Correspondence, TransferError> {
        if self.joint_ring != other.joint_ring {
            return Err(TransferError::NoModel("cannot add: different joint rings".into()));
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Correspondence::new(
            &format!("{}+{}", self.name, other.name),
            &self.source,
            &self.target,
            components,
        )
    }

    /// The fiber of one component over the generic point of X, decomposed.
    fn component_generic_points(
        &self,
        gens: &[MultiPoly],
    ) -> Result<Vec<corr_ideals::DecomposedPoint>, TransferError> {
        let model = self.source.model();
        let kx = &model.field;
        let ns = self.source.ring().num_vars();
        let target_ring = PolyRing::new(kx, &self.target.ring().vars());
        let block: Vec<usize> = (0..ns).collect();
        let mut fib = fiber_ideal(gens, &block, &model.generic_point, &target_ring);
        // The target's relations hold on the fiber as well.
        for g in self.target.ideal() {
            let lifted = MultiPoly::from_terms(
                &target_ring,
                g.terms()
                    .map(|(m, c)| (m.clone(), c.promote(kx).unwrap()))
                    .collect(),
            );
            fib.push(lifted);
        }
        let gb = buchberger(&fib, TermOrder::DegRevLex)?;
        if !is_zero_dimensional(&gb, TermOrder::DegRevLex) {
            return Err(TransferError::InvalidComponent(
                0,
                "generic fiber is not finite over the source".into(),
            ));
        }
        let quo = quotient_basis(&gb, TermOrder::DegRevLex)?;
        Ok(decompose_zero_dim(&quo)?)
    }

    /// Validate every component: finiteness over X at the generic point and
    /// integrality of the generic fiber. Flatness away from the generic
    /// point is not certified and is reported as such.
    pub fn validate(&self) -> ValidationReport {
        let mut reports = vec![];
        for (gens, _) in &self.components {
            let mut messages = vec![];
            let (finite, integral) = match self.component_generic_points(gens) {
                Ok(pts) => {
                    let ok = pts.len() == 1 && pts[0].length == 1;
                    if !ok {
                        messages.push(format!(
                            "generic fiber has {} points with lengths {:?}; an integral \
                             component finite dominant over the source has exactly one \
                             reduced point",
                            pts.len(),
                            pts.iter().map(|p| p.length).collect::<Vec<_>>()
                        ));
                    }
                    (true, ok)
                }
                Err(e) => {
                    messages.push(e.to_string());
                    (false, false)
                }
            };
            reports.push(ComponentReport {
                finite_over_source: finite,
                integral_generic_fiber: integral,
                messages,
            });
        }
        let mut flags = vec![
            "flatness away from the generic point is not certified; evaluation happens at \
             the generic point"
                .to_string(),
        ];
        flags.extend(self.source.flags().iter().cloned());
        for name in self.source.model().field.unverified_steps() {
            let msg = format!("unverified irreducibility: `{name}`");
            if !flags.contains(&msg) {
                flags.push(msg);
            }
        }
        ValidationReport { components: reports, flags }
    }

    /// The generic fiber: one cycle point per component.
    pub fn generic_fiber(&self) -> Result<GenericCycle, TransferError> {
        let model = self.source.model();
        let mut points = vec![];
        for (gens, mult) in &self.components {
            let pts = self.component_generic_points(gens)?;
            if pts.len() != 1 || pts[0].length != 1 {
                return Err(TransferError::NonIntegralComponent);
            }
            let p = &pts[0];
            points.push(CyclePoint {
                field: p.field.clone(),
                coords: p.coords.clone(),
                mult: *mult,
            });
        }
        Ok(GenericCycle { base: model.field.clone(), points })
    }

    /// degree = sum of multiplicity times residue degree over K(X).
    pub fn degree(&self) -> Result<i64, TransferError> {
        let cycle = self.generic_fiber()?;
        Ok(cycle.degree())
    }
}

impl GenericCycle {
    pub fn degree(&self) -> i64 {
        self.points
            .iter()
            .map(|p| p.mult * p.field.degree_over(&self.base).unwrap() as i64)
            .sum()
    }

    /// Scale all multiplicities (dropping the cycle to zero is allowed).
    pub fn scale(&self, m: i64) -> GenericCycle {
        let points = if m == 0 {
            vec![]
        } else {
            self.points
                .iter()
                .map(|p| CyclePoint { field: p.field.clone(), coords: p.coords.clone(), mult: p.mult * m })
                .collect()
        };
        GenericCycle { base: self.base.clone(), points }
    }

    /// Canonical form: replace each point by the subfield its coordinates
    /// generate (folding the residual degree into the multiplicity), merge
    /// equal points, drop cancellations.
    pub fn normalized(&self) -> GenericCycle {
        let mut merged: Vec<CyclePoint> = vec![];
        'outer: for p in &self.points {
            let rp = reduce_point(&self.base, p);
            for q in merged.iter_mut() {
                if points_equal(&self.base, q, &rp) {
                    q.mult += rp.mult;
                    continue 'outer;
                }
            }
            merged.push(rp);
        }
        merged.retain(|p| p.mult != 0);
        GenericCycle { base: self.base.clone(), points: merged }
    }

    /// Equality as cycles: both normalize to matching point sets.
    pub fn cycles_equal(&self, other: &GenericCycle) -> bool {
        if self.base != other.base {
            return false;
        }
        let a = self.normalized();
        let b = other.normalized();
        if a.points.len() != b.points.len() {
            return false;
        }
        let mut used = vec![false; b.points.len()];
        for p in &a.points {
            let mut found = false;
            for (j, q) in b.points.iter().enumerate() {
                if !used[j] && p.mult == q.mult && points_equal(&a.base, p, q) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }
}

/// A flattened, base-field presentation of a point: the minimal polynomial
/// of a primitive combination of the coordinates, plus each coordinate as a
/// polynomial in it.
struct FlatPoint {
    min_poly: UniPoly,
    coord_polys: Vec<UniPoly>,
}

/// The dimension over the base of the subfield generated by the point's
/// coordinates: close the span of products by repeated multiplication.
fn coordinate_subfield_degree(base: &FieldTower, p: &CyclePoint) -> usize {
    let full = p.field.degree_over(base).expect("finite point field");
    let coords_of = |e: &TowerElem| corr_algebra::coords_over(e, base).unwrap();
    let mut span: Vec<TowerElem> = vec![p.field.one()];
    loop {
        let mut candidates = span.clone();
        for z in &p.coords {
            for s in &span {
                candidates.push(s.mul(z));
            }
        }
        let mat = Matrix::from_fn(base, full, candidates.len(), |i, j| {
            coords_of(&candidates[j])[i].clone()
        });
        let rank = mat.rank();
        if rank == span.len() {
            return rank;
        }
        // Keep an independent subset as the new span basis.
        let mut next: Vec<TowerElem> = vec![];
        for c in candidates {
            if next.len() == rank {
                break;
            }
            let mut test = next.clone();
            test.push(c.clone());
            let m = Matrix::from_fn(base, full, test.len(), |i, j| coords_of(&test[j])[i].clone());
            if m.rank() == test.len() {
                next.push(c);
            }
        }
        span = next;
    }
}

fn flatten_point(base: &FieldTower, p: &CyclePoint) -> FlatPoint {
    let n = p.coords.len();
    let d0 = coordinate_subfield_degree(base, p);
    // Primitive-combination search: integer coefficient tuples first, then
    // combinations with small field elements.
    let int_candidates: Vec<Vec<i64>> = {
        let mut out: Vec<Vec<i64>> = vec![];
        for v in 0..n {
            let mut c = vec![0i64; n];
            c[v] = 1;
            out.push(c);
        }
        let mut bound = 0i64;
        while n >= 2 && out.len() < 32 * (n + 1) * (d0 + 1) {
            bound += 1;
            let mut stack: Vec<Vec<i64>> = vec![vec![]];
            while let Some(partial) = stack.pop() {
                if partial.len() == n {
                    if partial.iter().any(|&c| c == bound)
                        && partial.iter().filter(|&&c| c != 0).count() >= 2
                    {
                        out.push(partial);
                    }
                    continue;
                }
                for c in (0..=bound).rev() {
                    let mut next = partial.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
        out
    };
    let mut thetas: Vec<TowerElem> = vec![];
    for cand in int_candidates {
        let mut theta = p.field.zero();
        for (j, &c) in cand.iter().enumerate() {
            if c != 0 {
                theta = theta.add(&p.coords[j].mul(&p.field.from_i64(c)));
            }
        }
        thetas.push(theta);
    }
    // Field-coefficient fallback for small prime fields.
    if n >= 2 {
        for e in corr_algebra::elems::small_elements(base, 12) {
            let el = e.promote(&p.field).unwrap();
            let mut theta = p.coords[0].clone();
            for z in &p.coords[1..] {
                theta = theta.add(&z.mul(&el));
            }
            thetas.push(theta);
        }
    }
    for theta in thetas {
        let mp = minimal_polynomial(&theta, base).expect("finite point field");
        if mp.degree() != Some(d0) {
            continue;
        }
        // Express each coordinate as a polynomial in theta.
        let coords_of = |e: &TowerElem| corr_algebra::coords_over(e, base).unwrap();
        let full = p.field.degree_over(base).unwrap();
        let mut powers = Matrix::zero(base, full, d0);
        let mut pw = p.field.one();
        for j in 0..d0 {
            for (i, c) in coords_of(&pw).into_iter().enumerate() {
                powers.set(i, j, c);
            }
            if j + 1 < d0 {
                pw = pw.mul(&theta);
            }
        }
        let mut coord_polys = vec![];
        let mut ok = true;
        for z in &p.coords {
            match powers.solve(&coords_of(z)) {
                Some(sol) => coord_polys.push(UniPoly::from_coeffs(base, sol)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return FlatPoint { min_poly: mp, coord_polys };
        }
    }
    panic!(
        "no primitive presentation found for a cycle point of degree {d0}; \
         the coordinate subfield is not simply generated over the base"
    )
}

/// Replace a point by the subfield its coordinates generate, folding the
/// residual field degree into the multiplicity.
fn reduce_point(base: &FieldTower, p: &CyclePoint) -> CyclePoint {
    let full = p.field.degree_over(base).expect("finite point field");
    let flat = flatten_point(base, p);
    let d0 = flat.min_poly.degree().unwrap();
    let extra = (full / d0) as i64;
    if d0 == full && p.field.num_steps() == base.num_steps() + 1 {
        // Already a one-step presentation of the full field.
        return CyclePoint { field: p.field.clone(), coords: p.coords.clone(), mult: p.mult };
    }
    let (field, coords) = if d0 == 1 {
        let cs = flat.coord_polys.iter().map(|g| g.coeff(0)).collect();
        (base.clone(), cs)
    } else {
        let f = base
            .extend_algebraic_assume_irreducible("~pt", &flat.min_poly)
            .expect("monic irreducible minimal polynomial");
        let gamma = f.generator(f.num_steps() - 1);
        let cs = flat.coord_polys.iter().map(|g| g.eval(&gamma)).collect();
        (f, cs)
    };
    CyclePoint { field, coords, mult: p.mult * extra }
}

/// Point equality after tower flattening: same minimal data and some root
/// identification matching all coordinates. Points are compared as reduced
/// closed points; residual field degrees must agree beforehand (callers
/// normalize first).
pub fn points_equal(base: &FieldTower, p: &CyclePoint, q: &CyclePoint) -> bool {
    if p.coords.len() != q.coords.len() {
        return false;
    }
    let fp = flatten_point(base, p);
    let fq = flatten_point(base, q);
    if fp.min_poly != fq.min_poly {
        return false;
    }
    // Residual degrees beyond the coordinate subfield must match for the
    // points to be interchangeable in a cycle.
    let dp = p.field.degree_over(base).unwrap() / fp.min_poly.degree().unwrap();
    let dq = q.field.degree_over(base).unwrap() / fq.min_poly.degree().unwrap();
    if dp != dq {
        return false;
    }
    // Conjugate presentations: find a root of the shared minimal polynomial
    // in K[t]/(f) matching the coordinate expressions.
    let deg = fp.min_poly.degree().unwrap();
    if deg == 1 {
        return fp.coord_polys == fq.coord_polys;
    }
    let l = base
        .extend_algebraic_assume_irreducible("~cmp", &fp.min_poly)
        .expect("minimal polynomial is monic irreducible");
    let gamma = l.generator(l.num_steps() - 1);
    let fac = corr_algebra::factor(&fp.min_poly.promote(&l).unwrap()).expect("factorable");
    for (lin, _) in fac.factors.iter().filter(|(g, _)| g.degree() == Some(1)) {
        let root = lin.coeff(0).neg();
        let matches = fp
            .coord_polys
            .iter()
            .zip(&fq.coord_polys)
            .all(|(a, b)| a.eval(&root) == b.eval(&gamma));
        if matches {
            return true;
        }
    }
    false
}

/// Pull a correspondence back along a single point of its source: fiber,
/// quotient, decomposition, with the length-conservation check.
pub fn pullback_along_point(
    beta: &Correspondence,
    field: &FieldTower,
    coords: &[TowerElem],
) -> Result<Vec<(FieldTower, Vec<TowerElem>, usize, i64)>, TransferError> {
    let ns = beta.source().ring().num_vars();
    assert_eq!(coords.len(), ns);
    let mut out = vec![];
    for (gens, mult) in beta.components() {
        let target_ring = PolyRing::new(field, &beta.target().ring().vars());
        let block: Vec<usize> = (0..ns).collect();
        let mut fib = fiber_ideal(gens, &block, coords, &target_ring);
        for g in beta.target().ideal() {
            fib.push(MultiPoly::from_terms(
                &target_ring,
                g.terms().map(|(m, c)| (m.clone(), c.promote(field).unwrap())).collect(),
            ));
        }
        let gb = buchberger(&fib, TermOrder::DegRevLex)?;
        if !is_zero_dimensional(&gb, TermOrder::DegRevLex) {
            return Err(TransferError::InvalidComponent(
                0,
                "fiber over the point is not finite".into(),
            ));
        }
        let quo = quotient_basis(&gb, TermOrder::DegRevLex)?;
        let pts = decompose_zero_dim(&quo)?;
        // Length conservation: sum of length * residue degree = dimension.
        let total: usize = pts
            .iter()
            .map(|p| p.length * p.field.degree_over(field).unwrap())
            .sum();
        if total != quo.dim() {
            return Err(TransferError::LengthConservation);
        }
        for p in pts {
            out.push((p.field, p.coords, p.length, *mult));
        }
    }
    Ok(out)
}

/// Composition beta o alpha as a generic cycle over K(X): pull beta back
/// along each point of alpha's generic fiber; multiplicities multiply
/// through the fiber lengths, and residue degrees ride along in the towers.
pub fn compose(
    alpha: &Correspondence,
    beta: &Correspondence,
) -> Result<GenericCycle, TransferError> {
    assert!(
        Arc::ptr_eq(alpha.target(), beta.source())
            || alpha.target().name() == beta.source().name(),
        "composable correspondences required"
    );
    let cycle = alpha.generic_fiber()?;
    let mut points = vec![];
    for p in &cycle.points {
        for (m_field, z_coords, length, bmult) in
            pullback_along_point(beta, &p.field, &p.coords)?
        {
            points.push(CyclePoint {
                field: m_field,
                coords: z_coords,
                mult: p.mult * bmult * length as i64,
            });
        }
    }
    Ok(GenericCycle { base: cycle.base, points }.normalized())
}

/// Check associativity on a composable triple by comparing generic cycles.
pub fn associativity_check(
    alpha: &Correspondence,
    beta: &Correspondence,
    gamma: &Correspondence,
) -> Result<bool, TransferError> {
    // (gamma o beta) o alpha needs gamma o beta as a correspondence, which
    // requires closure reconstruction; instead compare both orders of the
    // cycle-level computation: pull gamma back along (beta o alpha), and
    // pull (gamma o beta computed pointwise) along alpha.
    let via_left = {
        let ba = compose(alpha, beta)?;
        let mut points = vec![];
        for p in &ba.points {
            for (f, z, l, m) in pullback_along_point(gamma, &p.field, &p.coords)? {
                points.push(CyclePoint { field: f, coords: z, mult: p.mult * m * l as i64 });
            }
        }
        GenericCycle { base: ba.base, points }.normalized()
    };
    let via_right = {
        let a = alpha.generic_fiber()?;
        let mut points = vec![];
        for pa in &a.points {
            // beta pulled along pa, then gamma pulled along each result.
            for (fb, yb, lb, mb) in pullback_along_point(beta, &pa.field, &pa.coords)? {
                for (fc, zc, lc, mc) in pullback_along_point(gamma, &fb, &yb)? {
                    points.push(CyclePoint {
                        field: fc,
                        coords: zc,
                        mult: pa.mult * mb * lb as i64 * mc * lc as i64,
                    });
                }
            }
        }
        GenericCycle { base: a.base, points }.normalized()
    };
    Ok(via_left.cycles_equal(&via_right))
}

/// Closure reconstruction for base dimension <= 1 and points generated by a
/// single coordinate: rebuild component ideals over the base from a generic
/// cycle.
pub fn reconstruct_closure(
    cycle: &GenericCycle,
    source: &Arc<AffineVariety>,
    target: &Arc<AffineVariety>,
    name: &str,
) -> Result<Correspondence, TransferError> {
    let model = source.model();
    if source.model_dimension() > 1 {
        return Err(TransferError::ClosureUnsupported(format!(
            "source `{}` has dimension {}",
            source.name(),
            source.model_dimension()
        )));
    }
    let base = source.base().clone();
    let kx = &model.field;
    if &cycle.base != kx {
        return Err(TransferError::ClosureUnsupported("cycle base mismatch".into()));
    }
    let mut joint_vars: Vec<&str> = source.ring().vars();
    joint_vars.extend(target.ring().vars());
    let joint = PolyRing::new(&base, &joint_vars);
    let ns = source.ring().num_vars();
    let mut components = vec![];
    for p in &cycle.points {
        let deg = p.field.degree_over(kx)?;
        // A single coordinate must generate the residue field.
        let mut found = None;
        for (j, z) in p.coords.iter().enumerate() {
            let mp = minimal_polynomial(z, kx)?;
            if mp.degree() == Some(deg) {
                found = Some((j, z.clone(), mp));
                break;
            }
        }
        let Some((j0, z0, mp)) = found else {
            return Err(TransferError::ClosureUnsupported(
                "no single coordinate generates the point".into(),
            ));
        };
        // Express the other coordinates as polynomials in z0 over K(X).
        let full = deg;
        let coords_of = |e: &TowerElem| corr_algebra::coords_over(e, kx).unwrap();
        let mut powers = Matrix::zero(kx, full, deg);
        let mut pw = p.field.one();
        for c in 0..deg {
            for (r, v) in coords_of(&pw).into_iter().enumerate() {
                powers.set(r, c, v);
            }
            if c + 1 < deg {
                pw = pw.mul(&z0);
            }
        }
        let mut exprs = vec![];
        for z in &p.coords {
            let sol = powers
                .solve(&coords_of(z))
                .ok_or_else(|| TransferError::ClosureUnsupported("univariate span".into()))?;
            exprs.push(UniPoly::from_coeffs(kx, sol));
        }
        // Clear denominators in x and rebuild joint-ring generators.
        let mut gens = vec![];
        // Relation for z0: mp(z0), coefficients in K(X).
        gens.push(clear_to_joint(&mp, ns + j0, ns, &joint, kx)?);
        for (j, expr) in exprs.iter().enumerate() {
            if j == j0 {
                continue;
            }
            // z_j - expr(z0) = 0.
            let mut rel = clear_to_joint(expr, ns + j0, ns, &joint, kx)?;
            // rel currently encodes expr's numerator; subtract z_j times the
            // cleared denominator.
            let den = denominator_in_x(expr, kx)?;
            let den_joint = kx_poly_to_joint(&den, ns, &joint)?;
            rel = den_joint.mul(&joint.var(ns + j)).sub(&rel);
            gens.push(rel);
        }
        // Source relations hold on the closure.
        for g in source.ideal() {
            gens.push(MultiPoly::from_terms(
                &joint,
                g.terms()
                    .map(|(m, c)| {
                        let mut mm = m.clone();
                        mm.extend(vec![0; joint.num_vars() - ns]);
                        (mm, c.clone())
                    })
                    .collect(),
            ));
        }
        components.push((gens, p.mult));
    }
    let corr = Correspondence::new(name, source, target, components)?;
    // Self-check: the reconstruction's generic fiber matches the cycle.
    let back = corr.generic_fiber()?;
    if !back.cycles_equal(cycle) {
        return Err(TransferError::ClosureUnsupported(
            "reconstructed closure does not reproduce the cycle".into(),
        ));
    }
    Ok(corr)
}

/// The common denominator (a polynomial in the source transcendental) of a
/// univariate polynomial over K(X).
fn denominator_in_x(p: &UniPoly, kx: &FieldTower) -> Result<UniPoly, TransferError> {
    // Work over the prefix below the transcendental steps: here K(X) is
    // either the base (dimension 0) or base + one transcendental.
    if kx.num_steps() == 0 {
        return Ok(UniPoly::one(kx));
    }
    let mut den = UniPoly::one(&kx.prefix(kx.num_steps() - 1));
    for c in p.coeffs() {
        let (_, d) = c.top_frac_parts();
        let g = den.gcd(&d)?;
        den = den.mul(&d.div_exact(&g));
    }
    Ok(den)
}

/// Multiply a K(X)-polynomial in one target variable by its denominator and
/// rewrite it in the joint ring (x-variables first).
fn clear_to_joint(
    p: &UniPoly,
    var_index: usize,
    ns: usize,
    joint: &PolyRing,
    kx: &FieldTower,
) -> Result<MultiPoly, TransferError> {
    let den = denominator_in_x(p, kx)?;
    let mut out = joint.zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // c * den is polynomial in x.
        let cleared = if kx.num_steps() == 0 {
            UniPoly::constant(c.clone())
        } else {
            let (num, d) = c.top_frac_parts();
            num.mul(&den.div_exact(&d))
        };
        let as_joint = kx_poly_to_joint(&cleared, ns, joint)?;
        let mut mono = vec![0u32; joint.num_vars()];
        mono[var_index] = i as u32;
        out = out.add(&as_joint.mul(&MultiPoly::from_terms(
            joint,
            vec![(mono, joint.tower().one())],
        )));
    }
    Ok(out)
}

/// A polynomial in the source transcendental (coefficients in the base
/// field) as a joint-ring polynomial.
fn kx_poly_to_joint(
    p: &UniPoly,
    ns: usize,
    joint: &PolyRing,
) -> Result<MultiPoly, TransferError> {
    let mut out = joint.zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let scalar = c
            .try_restrict(&joint.tower().clone())
            .ok_or_else(|| TransferError::ClosureUnsupported("nonconstant coefficient".into()))?;
        let mut mono = vec![0u32; joint.num_vars()];
        if ns > 0 {
            mono[0] = i as u32;
        } else if i > 0 {
            return Err(TransferError::ClosureUnsupported("point base".into()));
        }
        out = out.add(&MultiPoly::from_terms(joint, vec![(mono, scalar)]));
    }
    Ok(out)
}
