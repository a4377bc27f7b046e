//! Field-law and factorization invariants on randomized tower corpora.

use corr_algebra::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_elem(tower: &FieldTower, rng: &mut ChaCha8Rng) -> TowerElem {
    let p = tower.characteristic();
    let scalar = |rng: &mut ChaCha8Rng| -> i64 {
        if p == 0 {
            rng.gen_range(-6..=6)
        } else {
            rng.gen_range(0..p as i64)
        }
    };
    let k = tower.num_steps();
    if k == 0 {
        return tower.from_i64(scalar(rng));
    }
    let parent = tower.prefix(k - 1);
    let g = tower.generator(k - 1);
    match tower.step_degree(k - 1) {
        Some(d) => {
            let mut acc = tower.zero();
            let mut gp = tower.one();
            for i in 0..d {
                let c = random_elem(&parent, rng).promote(tower).unwrap();
                acc = acc.add(&c.mul(&gp));
                if i + 1 < d {
                    gp = gp.mul(&g);
                }
            }
            acc
        }
        None => {
            // Small rational function in the transcendental.
            let below = random_elem(&parent, rng).promote(tower).unwrap();
            below.add(&g.mul(&tower.from_i64(scalar(rng)))).add(&tower.from_i64(scalar(rng)))
        }
    }
}

/// Towers of total degree <= 8 over Q and small prime fields.
fn corpus() -> Vec<FieldTower> {
    let q = FieldTower::rationals();
    let qi = q
        .extend_algebraic("i", &UniPoly::from_i64_coeffs(&q, &[1, 0, 1]), IrreducibilityPolicy::Check)
        .unwrap();
    let qr2 = q
        .extend_algebraic("r2", &UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]), IrreducibilityPolicy::Check)
        .unwrap();
    let qr2r3 = qr2
        .extend_algebraic(
            "r3",
            &UniPoly::from_i64_coeffs(&qr2, &[-3, 0, 1]),
            IrreducibilityPolicy::Check,
        )
        .unwrap();
    let qcubic = q
        .extend_algebraic(
            "c",
            &UniPoly::from_i64_coeffs(&q, &[-1, -1, 0, 1]),
            IrreducibilityPolicy::Check,
        )
        .unwrap();
    let f2 = FieldTower::prime(2).unwrap();
    let f4 = f2
        .extend_algebraic("w", &UniPoly::from_i64_coeffs(&f2, &[1, 1, 1]), IrreducibilityPolicy::Check)
        .unwrap();
    let f16 = f4
        .extend_algebraic(
            "v",
            // v^2 + v + w is irreducible over F_4
            &UniPoly::from_coeffs(&f4, vec![f4.generator(0), f4.one(), f4.one()]),
            IrreducibilityPolicy::Check,
        )
        .unwrap();
    let f5 = FieldTower::prime(5).unwrap();
    let f25 = f5
        .extend_algebraic("u", &UniPoly::from_i64_coeffs(&f5, &[-2, 0, 1]), IrreducibilityPolicy::Check)
        .unwrap();
    let f3s = FieldTower::prime(3).unwrap().extend_transcendental("s").unwrap();
    vec![q, qi, qr2, qr2r3, qcubic, f2, f4, f16, f5, f25, f3s]
}

#[test]
fn field_inverse_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for tower in corpus() {
        for _ in 0..20 {
            let a = random_elem(&tower, &mut rng);
            if a.is_zero() {
                continue;
            }
            assert!(a.mul(&a.inv().unwrap()).is_one(), "a * a^-1 != 1 in {tower}");
        }
    }
}

#[test]
fn distributivity_and_associativity_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for tower in corpus() {
        for _ in 0..10 {
            let a = random_elem(&tower, &mut rng);
            let b = random_elem(&tower, &mut rng);
            let c = random_elem(&tower, &mut rng);
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}

#[test]
fn norm_matches_char_poly_constant_term() {
    // Nm(a) = (-1)^[L:K] * (constant term of char poly of mult-by-a).
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for tower in corpus().into_iter().filter(|t| t.num_steps() > 0 && t.num_transcendentals() == 0)
    {
        let base = tower.prefix(0);
        let deg = tower.degree_over(&base).unwrap();
        for _ in 0..8 {
            let a = random_elem(&tower, &mut rng);
            let (_, nm) = trace_and_norm(&a, &base).unwrap();
            let cp = mult_matrix(&a, &base).unwrap().char_poly().unwrap();
            let mut expect = cp.coeff(0);
            if deg % 2 == 1 {
                expect = expect.neg();
            }
            assert_eq!(nm, expect);
        }
    }
}

#[test]
fn norm_multiplicative_trace_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for tower in corpus().into_iter().filter(|t| t.num_steps() > 0 && t.num_transcendentals() == 0)
    {
        let base = tower.prefix(0);
        for _ in 0..8 {
            let a = random_elem(&tower, &mut rng);
            let b = random_elem(&tower, &mut rng);
            let (tra, nma) = trace_and_norm(&a, &base).unwrap();
            let (trb, nmb) = trace_and_norm(&b, &base).unwrap();
            let (trs, _) = trace_and_norm(&a.add(&b), &base).unwrap();
            let (_, nmp) = trace_and_norm(&a.mul(&b), &base).unwrap();
            assert_eq!(trs, tra.add(&trb));
            assert_eq!(nmp, nma.mul(&nmb));
        }
    }
}

#[test]
fn trace_norm_tower_transitivity() {
    // K = Q < L = Q(r2) < M = Q(r2)(r3), total degree 4 <= 8; and an
    // F_2 < F_4 < F_16 chain.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut chains: Vec<(FieldTower, FieldTower, FieldTower)> = vec![];
    {
        let q = FieldTower::rationals();
        let l = q
            .extend_algebraic("r2", &UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]), IrreducibilityPolicy::Check)
            .unwrap();
        let m = l
            .extend_algebraic("r3", &UniPoly::from_i64_coeffs(&l, &[-3, 0, 1]), IrreducibilityPolicy::Check)
            .unwrap();
        chains.push((q, l, m));
    }
    {
        let f2 = FieldTower::prime(2).unwrap();
        let f4 = f2
            .extend_algebraic("w", &UniPoly::from_i64_coeffs(&f2, &[1, 1, 1]), IrreducibilityPolicy::Check)
            .unwrap();
        let f16 = f4
            .extend_algebraic(
                "v",
                &UniPoly::from_coeffs(&f4, vec![f4.generator(0), f4.one(), f4.one()]),
                IrreducibilityPolicy::Check,
            )
            .unwrap();
        chains.push((f2, f4, f16));
    }
    for (k, l, m) in chains {
        for _ in 0..10 {
            let a = random_elem(&m, &mut rng);
            let (tr_mk, nm_mk) = trace_and_norm(&a, &k).unwrap();
            let (tr_ml, nm_ml) = trace_and_norm(&a, &l).unwrap();
            let (tr_lk, _) = trace_and_norm(&tr_ml, &k).unwrap();
            let (_, nm_lk) = trace_and_norm(&nm_ml, &k).unwrap();
            assert_eq!(tr_mk, tr_lk, "trace transitivity");
            assert_eq!(nm_mk, nm_lk, "norm transitivity");
        }
    }
}

#[test]
fn factorization_reassembles_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for tower in corpus() {
        for _ in 0..6 {
            let deg = rng.gen_range(1..=5);
            let mut coeffs: Vec<TowerElem> =
                (0..deg).map(|_| random_elem(&tower, &mut rng)).collect();
            coeffs.push(tower.one());
            let f = UniPoly::from_coeffs(&tower, coeffs);
            let fac = factor(&f).unwrap();
            assert_eq!(fac.product(), f, "factor product mismatch over {tower}");
        }
    }
}

#[test]
fn irreducibles_have_no_roots_in_small_fields() {
    // Exhaustive root search over finite fields of size <= 121.
    let f2 = FieldTower::prime(2).unwrap();
    let f4 = f2
        .extend_algebraic("w", &UniPoly::from_i64_coeffs(&f2, &[1, 1, 1]), IrreducibilityPolicy::Check)
        .unwrap();
    let f11 = FieldTower::prime(11).unwrap();
    let f121 = f11
        .extend_algebraic("u", &UniPoly::from_i64_coeffs(&f11, &[-2, 0, 1]), IrreducibilityPolicy::Check)
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for tower in [f2, f4, f11, f121] {
        let elements = enumerate_field(&tower);
        for _ in 0..5 {
            let deg = rng.gen_range(2..=4);
            let mut coeffs: Vec<TowerElem> =
                (0..deg).map(|_| random_elem(&tower, &mut rng)).collect();
            coeffs.push(tower.one());
            let f = UniPoly::from_coeffs(&tower, coeffs);
            for (g, _) in factor(&f).unwrap().factors {
                if g.degree() == Some(1) {
                    continue;
                }
                for x in &elements {
                    assert!(
                        !g.eval(x).is_zero(),
                        "irreducible factor has a root in the field"
                    );
                }
            }
        }
    }
}

fn enumerate_field(tower: &FieldTower) -> Vec<TowerElem> {
    let p = tower.characteristic();
    let mut elems = vec![tower.zero()];
    // All coefficient combinations over the basis.
    let mut basis = vec![tower.one()];
    for i in 0..tower.num_steps() {
        let d = tower.step_degree(i).unwrap();
        let g = tower.generator(i);
        let mut next = vec![];
        let mut gp = tower.one();
        for _ in 0..d {
            for b in &basis {
                next.push(gp.mul(b));
            }
            gp = gp.mul(&g);
        }
        basis = next;
    }
    for b in basis {
        let mut extended = vec![];
        for e in &elems {
            for c in 0..p {
                extended.push(e.add(&b.mul(&tower.from_i64(c as i64))));
            }
        }
        elems = extended;
    }
    elems.sort_by_key(|e| e.render());
    elems.dedup();
    elems
}
