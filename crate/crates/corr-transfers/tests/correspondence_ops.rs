//! Correspondence calculus: validation, generic fibers, degrees, pullback,
//! composition, associativity, and closure reconstruction.

use std::sync::Arc;

use corr_algebra::{FieldTower, IrreducibilityPolicy};
use corr_ideals::{MultiPoly, PolyRing};
use corr_transfers::*;

fn q() -> FieldTower {
    FieldTower::rationals()
}

fn pt(base: &FieldTower) -> Arc<AffineVariety> {
    Arc::new(AffineVariety::point("pt", base))
}

fn line(base: &FieldTower, name: &str, var: &str) -> Arc<AffineVariety> {
    Arc::new(AffineVariety::affine_space(name, base, &[var]).unwrap())
}

/// Component generators in the joint ring of a correspondence.
fn joint_poly(
    corr_ring: &PolyRing,
    build: impl Fn(&PolyRing) -> MultiPoly,
) -> MultiPoly {
    build(corr_ring)
}

/// [V(y^2 - 2)] from the point to the y-line over Q.
fn sqrt2_corr(base: &FieldTower) -> Correspondence {
    let x = pt(base);
    let y = line(base, "Y", "y");
    let ring = PolyRing::new(base, &["y"]);
    let gen = ring.var(0).pow(2).sub(&ring.from_i64(2));
    Correspondence::new("a", &x, &y, vec![(vec![gen], 1)]).unwrap()
}

#[test]
fn validate_graph_and_cover() {
    let base = q();
    // Graph of y = x^2 on the affine line: valid, degree 1.
    let x_line = line(&base, "X", "x");
    let y_line = line(&base, "Y", "y");
    let img = x_line.ring().var(0).pow(2);
    let graph = Correspondence::graph("f", &x_line, &y_line, &[img]).unwrap();
    assert!(graph.validate().all_valid());
    assert_eq!(graph.degree().unwrap(), 1);
    // V(y^2 - x) over the x-line: valid (irreducible over k(x)).
    let joint = graph.joint_ring().clone();
    let cover = Correspondence::new(
        "c",
        &x_line,
        &y_line,
        vec![(vec![joint_poly(&joint, |r| r.var(1).pow(2).sub(&r.var(0)))], 1)],
    )
    .unwrap();
    assert!(cover.validate().all_valid());
    assert_eq!(cover.degree().unwrap(), 2);
    // V(x) in the plane over the x-line: not finite.
    let bad = Correspondence::new(
        "b",
        &x_line,
        &y_line,
        vec![(vec![joint_poly(&joint, |r| r.var(0))], 1)],
    )
    .unwrap();
    let report = bad.validate();
    assert!(!report.all_valid());
    assert!(!report.components[0].finite_over_source || !report.components[0].integral_generic_fiber);
}

#[test]
fn generic_fiber_of_sqrt2() {
    let base = q();
    let a = sqrt2_corr(&base);
    let cycle = a.generic_fiber().unwrap();
    assert_eq!(cycle.points.len(), 1);
    let p = &cycle.points[0];
    assert_eq!(p.mult, 1);
    assert_eq!(p.field.degree_over(&base).unwrap(), 2);
    // y^2 = 2 at the point.
    assert_eq!(p.coords[0].mul(&p.coords[0]), p.field.from_i64(2));
    assert_eq!(a.degree().unwrap(), 2);
}

#[test]
fn rational_multiples() {
    // 3 [V(y - 5)]: one rational point with multiplicity 3.
    let base = q();
    let x = pt(&base);
    let y = line(&base, "Y", "y");
    let ring = PolyRing::new(&base, &["y"]);
    let gen = ring.var(0).sub(&ring.from_i64(5));
    let c = Correspondence::new("c", &x, &y, vec![(vec![gen], 3)]).unwrap();
    let cycle = c.generic_fiber().unwrap();
    assert_eq!(cycle.points.len(), 1);
    assert_eq!(cycle.points[0].mult, 3);
    assert_eq!(cycle.points[0].coords[0], base.from_i64(5));
    assert_eq!(c.degree().unwrap(), 3);
}

#[test]
fn degree_is_additive_with_signs() {
    // 2 [V(y^2 - 2)] - [graph of y = 7]: degree 2*2 - 1 = 3.
    let base = q();
    let x = pt(&base);
    let y = line(&base, "Y", "y");
    let ring = PolyRing::new(&base, &["y"]);
    let c = Correspondence::new(
        "c",
        &x,
        &y,
        vec![
            (vec![ring.var(0).pow(2).sub(&ring.from_i64(2))], 2),
            (vec![ring.var(0).sub(&ring.from_i64(7))], -1),
        ],
    )
    .unwrap();
    assert_eq!(c.degree().unwrap(), 3);
}

#[test]
fn pullback_splitting_and_lengths() {
    let base = q();
    let y_line = line(&base, "Y", "y");
    let z_line = line(&base, "Z", "z");
    // beta = [V(z^2 - y)].
    let joint = PolyRing::new(&base, &["y", "z"]);
    let beta = Correspondence::new(
        "b",
        &y_line,
        &z_line,
        vec![(vec![joint.var(1).pow(2).sub(&joint.var(0))], 1)],
    )
    .unwrap();
    // At y = t^2 over k(t): z^2 - t^2 splits into two length-1 points.
    let kt = base.extend_transcendental("t").unwrap();
    let t = kt.generator(0);
    let pts = pullback_along_point(&beta, &kt, &[t.mul(&t)]).unwrap();
    assert_eq!(pts.len(), 2);
    for (f, _, len, m) in &pts {
        assert_eq!(*len, 1);
        assert_eq!(*m, 1);
        assert_eq!(f.degree_over(&kt).unwrap(), 1);
    }
    // At y = 0: one point of length 2.
    let pts = pullback_along_point(&beta, &base, &[base.from_i64(0)]).unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].2, 2);
    // Graph pullback at an irrational point: z = 2 with length 1.
    let l = base
        .extend_algebraic(
            "r2",
            &corr_algebra::UniPoly::from_i64_coeffs(&base, &[-2, 0, 1]),
            IrreducibilityPolicy::Check,
        )
        .unwrap();
    let graph = Correspondence::graph(
        "sq",
        &y_line,
        &z_line,
        &[y_line.ring().var(0).pow(2)],
    )
    .unwrap();
    let r2 = l.generator(0);
    let pts = pullback_along_point(&graph, &l, &[r2]).unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].1[0], l.from_i64(2));
    assert_eq!(pts[0].2, 1);
}

#[test]
fn compose_sqrt2_with_squaring() {
    // X = pt, alpha = [V(y^2 - 2)], beta = graph of z = y^2:
    // the composed cycle is 2 [z = 2] over Q.
    let base = q();
    let alpha = sqrt2_corr(&base);
    let y_line = alpha.target().clone();
    let z_line = line(&base, "Z", "z");
    let beta =
        Correspondence::graph("sq", &y_line, &z_line, &[y_line.ring().var(0).pow(2)]).unwrap();
    let cycle = compose(&alpha, &beta).unwrap();
    assert_eq!(cycle.points.len(), 1);
    let p = &cycle.points[0];
    // Normalization reduces to the subfield generated by z = 2,
    // folding the residual degree 2 into the multiplicity.
    assert_eq!(p.field.degree_over(&base).unwrap(), 1);
    assert_eq!(p.coords[0], base.from_i64(2));
    assert_eq!(p.mult, 2);
    assert_eq!(cycle.degree(), 2);
}

#[test]
fn compose_with_identity_graph() {
    let base = q();
    let alpha = sqrt2_corr(&base);
    let y_line = alpha.target().clone();
    let y2 = line(&base, "Y2", "w");
    let ident =
        Correspondence::graph("id", &y_line, &y2, &[y_line.ring().var(0)]).unwrap();
    let left = compose(&alpha, &ident).unwrap();
    let fiber = alpha.generic_fiber().unwrap();
    assert!(left.cycles_equal(&fiber));
}

#[test]
fn beta_compose_graph_is_substitution() {
    // beta o (graph of f) = beta pulled back along f.
    let base = q();
    let x_line = line(&base, "X", "x");
    let y_line = line(&base, "Y", "y");
    let z_line = line(&base, "Z", "z");
    // f: x -> x^2 + 1.
    let f_img = x_line.ring().var(0).pow(2).add(&x_line.ring().from_i64(1));
    let f = Correspondence::graph("f", &x_line, &y_line, &[f_img]).unwrap();
    // beta = [V(z^2 - y)].
    let joint = PolyRing::new(&base, &["y", "z"]);
    let beta = Correspondence::new(
        "b",
        &y_line,
        &z_line,
        vec![(vec![joint.var(1).pow(2).sub(&joint.var(0))], 1)],
    )
    .unwrap();
    let composed = compose(&f, &beta).unwrap();
    // Substitution: z^2 = x^2 + 1 over k(x): irreducible, one point deg 2.
    assert_eq!(composed.points.len(), 1);
    assert_eq!(composed.degree(), 2);
    let p = &composed.points[0];
    let kx = &composed.base;
    let x = kx.generator(0).promote(&p.field).unwrap();
    assert_eq!(
        p.coords[0].mul(&p.coords[0]),
        x.mul(&x).add(&p.field.one())
    );
}

#[test]
fn associativity_of_towers_of_covers() {
    let base = q();
    let alpha = sqrt2_corr(&base);
    let y_line = alpha.target().clone();
    let z_line = line(&base, "Z", "z");
    let w_line = line(&base, "W", "w");
    let joint_yz = PolyRing::new(&base, &["y", "z"]);
    let beta = Correspondence::new(
        "b",
        &y_line,
        &z_line,
        vec![(vec![joint_yz.var(1).pow(2).sub(&joint_yz.var(0))], 1)],
    )
    .unwrap();
    let gamma =
        Correspondence::graph("g", &z_line, &w_line, &[z_line.ring().var(0).pow(2)]).unwrap();
    assert!(associativity_check(&alpha, &beta, &gamma).unwrap());
    // All-graphs case.
    let g1 = Correspondence::graph(
        "g1",
        &y_line,
        &z_line,
        &[y_line.ring().var(0).add(&y_line.ring().from_i64(1))],
    )
    .unwrap();
    assert!(associativity_check(&alpha, &g1, &gamma).unwrap());
}

#[test]
fn compose_is_bilinear_in_multiplicity() {
    let base = q();
    let alpha = sqrt2_corr(&base);
    let tripled = alpha.scale(3).unwrap();
    let y_line = alpha.target().clone();
    let z_line = line(&base, "Z", "z");
    let beta =
        Correspondence::graph("sq", &y_line, &z_line, &[y_line.ring().var(0).pow(2)]).unwrap();
    let one = compose(&alpha, &beta).unwrap();
    let three = compose(&tripled, &beta).unwrap();
    assert!(three.cycles_equal(&one.scale(3)));
}

#[test]
fn cancellation_of_identical_points() {
    // alpha + (-alpha) composes to the empty cycle.
    let base = q();
    let alpha = sqrt2_corr(&base);
    let minus = alpha.scale(-1).unwrap();
    let sum = alpha.add(&minus).unwrap();
    let cycle = sum.generic_fiber().unwrap().normalized();
    assert!(cycle.points.is_empty());
    assert_eq!(cycle.degree(), 0);
}

#[test]
fn degree_multiplicativity_through_composition() {
    let base = q();
    let x_line = line(&base, "X", "x");
    let y_line = line(&base, "Y", "y");
    let z_line = line(&base, "Z", "z");
    let joint_xy = PolyRing::new(&base, &["x", "y"]);
    let alpha = Correspondence::new(
        "a",
        &x_line,
        &y_line,
        vec![(vec![joint_xy.var(1).pow(2).sub(&joint_xy.var(0))], 1)],
    )
    .unwrap();
    let joint_yz = PolyRing::new(&base, &["y", "z"]);
    let beta = Correspondence::new(
        "b",
        &y_line,
        &z_line,
        vec![(vec![joint_yz.var(1).pow(3).sub(&joint_yz.var(0))], 1)],
    )
    .unwrap();
    let composed = compose(&alpha, &beta).unwrap();
    assert_eq!(alpha.degree().unwrap(), 2);
    assert_eq!(beta.degree().unwrap(), 3);
    assert_eq!(composed.degree(), 6);
}

#[test]
fn closure_reconstruction_roundtrip() {
    // Compose over X = A^1 and rebuild a correspondence from the cycle.
    let base = q();
    let x_line = line(&base, "X", "x");
    let y_line = line(&base, "Y", "y");
    let z_line = line(&base, "Z", "z");
    let joint_xy = PolyRing::new(&base, &["x", "y"]);
    let alpha = Correspondence::new(
        "a",
        &x_line,
        &y_line,
        vec![(vec![joint_xy.var(1).pow(2).sub(&joint_xy.var(0))], 1)],
    )
    .unwrap();
    let beta =
        Correspondence::graph("sq", &y_line, &z_line, &[y_line.ring().var(0).pow(2)]).unwrap();
    let cycle = compose(&alpha, &beta).unwrap();
    let rebuilt = reconstruct_closure(&cycle, &x_line, &z_line, "rebuilt").unwrap();
    let back = rebuilt.generic_fiber().unwrap();
    assert!(back.cycles_equal(&cycle));
    // z = y^2 = x on the cover: the closure is the graph z = x with
    // multiplicity 2 (the cycle point is rational of weight 2).
    assert_eq!(back.degree(), 2);
}

#[test]
fn curve_source_with_dependent_variable() {
    // X = V(u^2 - v^3) with model: v transcendental, u dependent... the
    // derived split makes the first variable transcendental when possible:
    // here u^2 = v^3 resolves u over k(v) only after v is promoted.
    let base = q();
    let ring = PolyRing::new(&base, &["u", "v"]);
    let rel = ring.var(0).pow(2).sub(&ring.var(1).pow(3));
    let x = Arc::new(
        AffineVariety::new("C", &base, &["u", "v"], vec![rel], IrreducibilityPolicy::Check)
            .unwrap(),
    );
    assert_eq!(x.model_dimension(), 1);
    // The generic point satisfies the relation.
    let model = x.model();
    let u = &model.generic_point[0];
    let v = &model.generic_point[1];
    assert_eq!(u.mul(u), v.mul(v).mul(v));
    // A transfer source over the curve: the coordinate projection graph.
    let y_line = line(&base, "Y", "y");
    let graph = Correspondence::graph("pr", &x, &y_line, &[x.ring().var(1)]).unwrap();
    assert!(graph.validate().all_valid());
    assert_eq!(graph.degree().unwrap(), 1);
}
