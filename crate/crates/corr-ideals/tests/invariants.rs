//! Structural invariants: commuting multiplication matrices, length
//! conservation, basis canonicity, and primary-component reconstruction.

use corr_algebra::{factor, FieldTower, UniPoly};
use corr_ideals::*;

fn gb(gens: &[MultiPoly], order: TermOrder) -> Vec<MultiPoly> {
    buchberger(gens, order).unwrap()
}

/// Ideal intersection via the t-trick: eliminate t from t*I + (1-t)*J.
fn intersect(i: &[MultiPoly], j: &[MultiPoly], ring: &PolyRing) -> Vec<MultiPoly> {
    let tower = ring.tower().clone();
    let mut tvars = vec!["~t"];
    tvars.extend(ring.vars());
    let bigring = PolyRing::new(&tower, &tvars);
    let t = bigring.var(0);
    let lift = |f: &MultiPoly| -> MultiPoly {
        MultiPoly::from_terms(
            &bigring,
            f.terms()
                .map(|(m, c)| {
                    let mut mm = vec![0u32];
                    mm.extend(m.iter().copied());
                    (mm, c.clone())
                })
                .collect(),
        )
    };
    let mut gens = vec![];
    for f in i {
        gens.push(t.mul(&lift(f)));
    }
    let one_minus_t = bigring.one().sub(&t);
    for f in j {
        gens.push(one_minus_t.mul(&lift(f)));
    }
    let basis = gb(&gens, TermOrder::Block { split: 1 });
    let mut out = vec![];
    for g in basis {
        if g.terms().all(|(m, _)| m[0] == 0) {
            out.push(MultiPoly::from_terms(
                ring,
                g.terms().map(|(m, c)| (m[1..].to_vec(), c.clone())).collect(),
            ));
        }
    }
    out
}

#[test]
fn multiplication_matrices_commute_everywhere() {
    let q = FieldTower::rationals();
    let f5 = FieldTower::prime(5).unwrap();
    type Builder = fn(&PolyRing) -> Vec<MultiPoly>;
    let builders: Vec<(FieldTower, Builder)> = vec![
        (q.clone(), |r| {
            vec![r.var(0).pow(2).sub(&r.var(1)), r.var(1).pow(2).sub(&r.from_i64(3))]
        }),
        (q, |r| {
            vec![
                r.var(0).pow(3).sub(&r.var(0)),
                r.var(1).pow(2).sub(&r.var(0)),
            ]
        }),
        (f5, |r| {
            vec![r.var(0).pow(2).sub(&r.from_i64(2)), r.var(1).pow(3).sub(&r.var(0))]
        }),
    ];
    for (tower, build) in builders {
        let r = PolyRing::new(&tower, &["x", "y"]);
        let basis = gb(&build(&r), TermOrder::DegRevLex);
        let quo = quotient_basis(&basis, TermOrder::DegRevLex).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(
                    quo.mult_matrix(a).mul(quo.mult_matrix(b)),
                    quo.mult_matrix(b).mul(quo.mult_matrix(a))
                );
            }
        }
    }
}

#[test]
fn decompose_conservation_over_corpus() {
    let q = FieldTower::rationals();
    let f5 = FieldTower::prime(5).unwrap();
    let mk = |tower: &FieldTower, build: &dyn Fn(&PolyRing) -> Vec<MultiPoly>| {
        let r = PolyRing::new(tower, &["x", "y"]);
        let gens = build(&r);
        let basis = gb(&gens, TermOrder::DegRevLex);
        let quo = quotient_basis(&basis, TermOrder::DegRevLex).unwrap();
        let pts = decompose_zero_dim(&quo).unwrap();
        let total: usize = pts
            .iter()
            .map(|p| p.length * p.field.degree_over(tower).unwrap())
            .sum();
        assert_eq!(total, quo.dim(), "length conservation");
        for p in &pts {
            for g in quo.groebner_basis() {
                assert!(g.eval(&p.coords).is_zero(), "point must satisfy the ideal");
            }
        }
        pts.len()
    };
    // (x^2-2)(x-1) = 0, y = x^2: three points over Q.
    let n = mk(&q, &|r| {
        let x = r.var(0);
        let y = r.var(1);
        vec![
            x.pow(2).sub(&r.from_i64(2)).mul(&x.sub(&r.from_i64(1))),
            y.sub(&x.pow(2)),
        ]
    });
    assert_eq!(n, 2); // point x=1 plus the conjugate pair x^2=2
    // Fat point plus reduced point: <x^2(x-1), y - x>.
    let n = mk(&q, &|r| {
        let x = r.var(0);
        let y = r.var(1);
        vec![x.pow(2).mul(&x.sub(&r.from_i64(1))), y.sub(&x)]
    });
    assert_eq!(n, 2);
    // Over F_5: x^2 = 2 is irreducible (2 is a non-residue mod 5).
    let n = mk(&f5, &|r| {
        let x = r.var(0);
        let y = r.var(1);
        vec![x.pow(2).sub(&r.from_i64(2)), y.sub(&x.mul(&x))]
    });
    assert_eq!(n, 1);
}

#[test]
fn primary_reconstruction_small() {
    // I = <(x-1)(x-3), y - x> over Q: primary components cut by the factors
    // of the minimal polynomial of x; their intersection is I again.
    let q = FieldTower::rationals();
    let r = PolyRing::new(&q, &["x", "y"]);
    let x = r.var(0);
    let y = r.var(1);
    let gens = vec![
        x.sub(&r.from_i64(1)).mul(&x.sub(&r.from_i64(3))).mul(&x.sub(&r.from_i64(3))),
        y.sub(&x),
    ];
    let order = TermOrder::DegRevLex;
    let basis = gb(&gens, order);
    let quo = quotient_basis(&basis, order).unwrap();
    assert_eq!(quo.dim(), 3);
    // Separating form x: minimal polynomial (t-1)(t-3)^2.
    let mp = quo.mult_matrix(0).min_poly().unwrap();
    let fac = factor(&mp).unwrap();
    assert_eq!(fac.factors.len(), 2);
    let mut components: Vec<Vec<MultiPoly>> = vec![];
    for (f, e) in &fac.factors {
        // f(x)^e as a multivariate polynomial in x.
        let fe = f.pow(*e as usize);
        let mut fx = r.zero();
        for (i, c) in fe.coeffs().iter().enumerate() {
            fx = fx.add(&MultiPoly::from_terms(&r, vec![(vec![i as u32, 0], c.clone())]));
        }
        let mut aug = gens.clone();
        aug.push(fx);
        components.push(gb(&aug, order));
    }
    let meet = intersect(&components[0], &components[1], &r);
    let meet_gb = gb(&meet, order);
    let lhs: Vec<String> = meet_gb.iter().map(|g| g.render()).collect();
    let rhs: Vec<String> = basis.iter().map(|g| g.render()).collect();
    assert_eq!(lhs, rhs, "intersection of primary components reconstructs the ideal");
}

#[test]
fn groebner_basis_agrees_with_substitution_oracle() {
    // <y - x^2, x^2 - 2> in lex y > x: by hand, substitute x^2 = 2 into the
    // first generator: {y - 2, x^2 - 2}.
    let q = FieldTower::rationals();
    let r = PolyRing::new(&q, &["y", "x"]);
    let y = r.var(0);
    let x = r.var(1);
    let basis = gb(&[y.sub(&x.pow(2)), x.pow(2).sub(&r.from_i64(2))], TermOrder::Lex);
    assert_eq!(
        basis.iter().map(|g| g.render()).collect::<Vec<_>>(),
        vec!["x^2 + -2", "y + -2"]
    );
}

#[test]
fn normal_form_is_ideal_membership() {
    let q = FieldTower::rationals();
    let r = PolyRing::new(&q, &["x", "y"]);
    let x = r.var(0);
    let y = r.var(1);
    let basis = gb(&[x.pow(2).sub(&y), y.pow(2).sub(&r.from_i64(2))], TermOrder::DegRevLex);
    // x^4 - 2 = (x^2-y)(x^2+y) + (y^2-2) is in the ideal.
    let f = x.pow(4).sub(&r.from_i64(2));
    assert!(ideal_contains(&basis, &f, TermOrder::DegRevLex));
    assert!(!ideal_contains(&basis, &x, TermOrder::DegRevLex));
}

#[test]
fn decompose_univariate_matches_factor_oracle() {
    // The decomposition of k[x]/<f> must match the factorization of f:
    // lengths are the exponents, residue degrees the factor degrees.
    let q = FieldTower::rationals();
    let r = PolyRing::new(&q, &["x"]);
    let f = UniPoly::from_i64_coeffs(&q, &[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
    let poly = MultiPoly::from_terms(
        &r,
        f.coeffs().iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())).collect(),
    );
    let basis = gb(&[poly], TermOrder::Lex);
    let quo = quotient_basis(&basis, TermOrder::Lex).unwrap();
    let pts = decompose_zero_dim(&quo).unwrap();
    let fac = factor(&f).unwrap();
    assert_eq!(pts.len(), fac.factors.len());
    let mut roots: Vec<String> = pts.iter().map(|p| p.coords[0].render()).collect();
    roots.sort();
    assert_eq!(roots, vec!["1", "2", "3"]);
}
