//! Group plugins and the symmetric-power pushforward `f_* g`: the image of
//! a plugin point of B under the composition of the canonical section with
//! the descended addition map, computed entirely in the orbit basis.

use std::sync::Arc;

use corr_algebra::{basis_over, coords_over, FieldTower, TowerElem};
use corr_ideals::ArtinianQuotient;

use crate::error::TransferError;
use crate::ring_ops::{CommRing, QuotientRing};
use crate::sym_power::{
    ring_det, symmetrize_power, symmetrize_slot_sum, u_apply, u_map, FiniteFreeAlgebra,
};

/// The supported commutative group schemes: the additive group, the
/// multiplicative group, roots of unity, and finite products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupPlugin {
    Ga,
    Gm,
    MuN(u64),
    Product(Vec<GroupPlugin>),
}

impl GroupPlugin {
    /// The flattened list of primitive factors.
    pub fn factors(&self) -> Vec<&GroupPlugin> {
        match self {
            GroupPlugin::Product(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
            other => vec![other],
        }
    }

    pub fn arity(&self) -> usize {
        self.factors().len()
    }
}

/// Pushforward for the additive group: apply u to the symmetrized sum of
/// `g` placed in each tensor slot.
pub fn pushforward_ga<R: CommRing>(
    algebra: &Arc<FiniteFreeAlgebra<R>>,
    g: &[R::Elem],
) -> R::Elem {
    let d = algebra.rank();
    let u = u_map(algebra, d);
    let x = symmetrize_slot_sum(algebra, g, d);
    u_apply(&u, &x, algebra.base())
}

/// Pushforward for the multiplicative group: apply u to `g^(tensor d)`.
/// The invertibility certificate (unit determinant of multiplication by
/// `g`) is computed, not assumed.
pub fn pushforward_gm<R: CommRing>(
    algebra: &Arc<FiniteFreeAlgebra<R>>,
    g: &[R::Elem],
) -> Result<R::Elem, TransferError> {
    let base = algebra.base().clone();
    let d = algebra.rank();
    let det = ring_det(&base, d, &|i, j| {
        // column j: coordinates of g * e_j
        algebra.mul_vec(g, &algebra.basis_vec(j))[i].clone()
    });
    if !base.is_unit(&det) {
        return Err(TransferError::NotAUnit);
    }
    let u = u_map(algebra, d);
    let x = symmetrize_power(algebra, g, d);
    Ok(u_apply(&u, &x, &base))
}

/// Pushforward for one primitive plugin factor. For roots of unity the
/// result is computed as for the multiplicative group and the n-th power
/// condition is asserted afterwards.
pub fn pushforward<R: CommRing>(
    algebra: &Arc<FiniteFreeAlgebra<R>>,
    plugin: &GroupPlugin,
    g: &[R::Elem],
) -> Result<R::Elem, TransferError> {
    match plugin {
        GroupPlugin::Ga => Ok(pushforward_ga(algebra, g)),
        GroupPlugin::Gm => pushforward_gm(algebra, g),
        GroupPlugin::MuN(n) => {
            let base = algebra.base().clone();
            let v = pushforward_gm(algebra, g)?;
            let pow = base.pow(&v, *n as u32);
            assert!(
                pow == base.one(),
                "pushforward of a mu_n point must satisfy the n-th power condition"
            );
            Ok(v)
        }
        GroupPlugin::Product(_) => {
            panic!("product plugins are handled componentwise by the caller")
        }
    }
}

/// Both sides of the coproduct identity: pushing forward from each factor
/// and adding in the group equals pushing the pair forward from the product
/// algebra.
pub fn coproduct_pushforward_check<R: CommRing>(
    b1: &Arc<FiniteFreeAlgebra<R>>,
    b2: &Arc<FiniteFreeAlgebra<R>>,
    g1: &[R::Elem],
    g2: &[R::Elem],
    plugin: &GroupPlugin,
) -> Result<bool, TransferError> {
    let base = b1.base().clone();
    let prod = FiniteFreeAlgebra::product(b1, b2)?;
    let mut g = g1.to_vec();
    g.extend(g2.iter().cloned());
    let joint = pushforward(&prod, plugin, &g)?;
    let p1 = pushforward(b1, plugin, g1)?;
    let p2 = pushforward(b2, plugin, g2)?;
    let separate = match plugin {
        GroupPlugin::Ga => base.add(&p1, &p2),
        _ => base.mul(&p1, &p2),
    };
    Ok(joint == separate)
}

// ----- constructors for concrete algebras over towers -----

/// The finite extension L/K as a finite free K-algebra on the tower basis.
pub fn algebra_from_extension(
    l: &FieldTower,
    k: &FieldTower,
) -> Result<Arc<FiniteFreeAlgebra<FieldTower>>, TransferError> {
    let basis = basis_over(l, k)?;
    let d = basis.len();
    let mut structure = vec![vec![vec![k.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let prod = basis[i].mul(&basis[j]);
            let coords = coords_over(&prod, k)?;
            structure[i][j] = coords.clone();
            structure[j][i] = coords;
        }
    }
    let unit = coords_over(&l.one(), k)?;
    let names = (0..d).map(|i| format!("b{i}")).collect();
    FiniteFreeAlgebra::new(k.clone(), names, structure, unit)
}

/// Express an element of L in the algebra coordinates used by
/// [`algebra_from_extension`].
pub fn extension_coords(
    a: &TowerElem,
    k: &FieldTower,
) -> Result<Vec<TowerElem>, TransferError> {
    Ok(coords_over(a, k)?)
}

/// An artinian quotient as a finite free algebra over its coefficient
/// field, on the standard-monomial basis.
pub fn algebra_from_quotient(
    q: &ArtinianQuotient,
) -> Result<Arc<FiniteFreeAlgebra<FieldTower>>, TransferError> {
    let tower = q.ring().tower().clone();
    let d = q.dim();
    if d == 0 {
        return Err(TransferError::MalformedAlgebra("zero ring".into()));
    }
    let ring = QuotientRing::new(q.clone());
    let mut structure = vec![vec![vec![tower.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let mut ei = vec![tower.zero(); d];
            ei[i] = tower.one();
            let mut ej = vec![tower.zero(); d];
            ej[j] = tower.one();
            let prod = ring.mul(&ei, &ej);
            structure[i][j] = prod.clone();
            structure[j][i] = prod;
        }
    }
    let unit = ring.one();
    let names = (0..d)
        .map(|i| format!("m{}", render_monomial(&q.standard_monomials()[i])))
        .collect();
    FiniteFreeAlgebra::new(tower, names, structure, unit)
}

fn render_monomial(m: &[u32]) -> String {
    m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("_")
}

/// Extend scalars of a tower algebra along a tower inclusion K -> K'.
pub fn algebra_base_change(
    b: &Arc<FiniteFreeAlgebra<FieldTower>>,
    bigger: &FieldTower,
) -> Result<Arc<FiniteFreeAlgebra<FieldTower>>, TransferError> {
    let d = b.rank();
    let pr = |v: &TowerElem| v.promote(bigger).expect("base change along a prefix");
    let mut structure = vec![vec![vec![bigger.zero(); d]; d]; d];
    #[allow(clippy::needless_range_loop)]
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                structure[i][j][k] = pr(&b.structure_const(i, j, k));
            }
        }
    }
    let unit = b.unit().iter().map(&pr).collect();
    FiniteFreeAlgebra::new(
        bigger.clone(),
        b.basis_names().to_vec(),
        structure,
        unit,
    )
}

/// Change of basis by an invertible matrix over a field base; returns the
/// algebra presented in the new basis together with the matrix used.
pub fn change_basis(
    b: &Arc<FiniteFreeAlgebra<FieldTower>>,
    p: &corr_algebra::Matrix,
) -> Result<Arc<FiniteFreeAlgebra<FieldTower>>, TransferError> {
    let k = b.base().clone();
    let d = b.rank();
    assert_eq!((p.rows(), p.cols()), (d, d));
    // New basis f_j = sum_i p[i][j] e_i. Products f_a f_b re-expressed in f.
    let new_in_old: Vec<Vec<TowerElem>> =
        (0..d).map(|j| (0..d).map(|i| p.at(i, j).clone()).collect()).collect();
    // Solve old coordinates -> new coordinates via p^{-1} columns.
    let solve_new = |v: &[TowerElem]| -> Vec<TowerElem> {
        p.solve(v).expect("basis change matrix invertible")
    };
    let mut structure = vec![vec![vec![k.zero(); d]; d]; d];
    for a in 0..d {
        for bb in 0..=a {
            let prod = b.mul_vec(&new_in_old[a], &new_in_old[bb]);
            let coords = solve_new(&prod);
            structure[a][bb] = coords.clone();
            structure[bb][a] = coords;
        }
    }
    let unit = solve_new(b.unit());
    FiniteFreeAlgebra::new(k, (0..d).map(|i| format!("f{i}")).collect(), structure, unit)
}

/// Compare u before and after a basis change, as functionals on intrinsic
/// elements: symmetrized powers and slot sums of algebra elements.
pub fn u_basis_independence_check(
    b: &Arc<FiniteFreeAlgebra<FieldTower>>,
    p: &corr_algebra::Matrix,
    samples: &[Vec<TowerElem>],
) -> Result<bool, TransferError> {
    let k = b.base().clone();
    let d = b.rank();
    let b2 = change_basis(b, p)?;
    let u1 = u_map(b, d);
    let u2 = u_map(&b2, d);
    for s in samples {
        // Coordinates of the same intrinsic element in both bases.
        let c1 = s.clone();
        let c2 = p.solve(s).expect("invertible");
        let pw1 = u_apply(&u1, &symmetrize_power(b, &c1, d), &k);
        let pw2 = u_apply(&u2, &symmetrize_power(&b2, &c2, d), &k);
        if pw1 != pw2 {
            return Ok(false);
        }
        let sl1 = u_apply(&u1, &symmetrize_slot_sum(b, &c1, d), &k);
        let sl2 = u_apply(&u2, &symmetrize_slot_sum(&b2, &c2, d), &k);
        if sl1 != sl2 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use corr_algebra::{trace_and_norm, IrreducibilityPolicy, Matrix, UniPoly};

    fn q_i() -> (FieldTower, FieldTower) {
        let q = FieldTower::rationals();
        let l = q
            .extend_algebraic("i", &UniPoly::from_i64_coeffs(&q, &[1, 0, 1]), IrreducibilityPolicy::Check)
            .unwrap();
        (q, l)
    }

    #[test]
    fn gm_pushforward_is_norm() {
        // L = Q(i), g = 1 + i: the pushforward equals Nm(1+i) = 2, checked
        // against the independent multiplication-matrix oracle.
        let (q, l) = q_i();
        let alg = algebra_from_extension(&l, &q).unwrap();
        let g = l.one().add(&l.generator(0));
        let coords = extension_coords(&g, &q).unwrap();
        let pushed = pushforward_gm(&alg, &coords).unwrap();
        let (_, nm) = trace_and_norm(&g, &q).unwrap();
        assert_eq!(pushed, nm);
        assert_eq!(pushed, q.from_i64(2));
    }

    #[test]
    fn ga_pushforward_is_trace() {
        let (q, l) = q_i();
        let alg = algebra_from_extension(&l, &q).unwrap();
        let g = l.one().add(&l.generator(0));
        let coords = extension_coords(&g, &q).unwrap();
        let pushed = pushforward_ga(&alg, &coords);
        let (tr, _) = trace_and_norm(&g, &q).unwrap();
        assert_eq!(pushed, tr);
        assert_eq!(pushed, q.from_i64(2));
        // g = 0 pushes to 0 by linearity.
        let zero = vec![q.zero(), q.zero()];
        assert!(pushforward_ga(&alg, &zero).is_zero());
    }

    #[test]
    fn dual_numbers_ga_gives_twice_residue() {
        // B = k[t]/(t^2), g = a + b t: the pushforward for the additive
        // group is 2a (degree times the residue value).
        let q = FieldTower::rationals();
        let r = corr_ideals::PolyRing::new(&q, &["t"]);
        let t = r.var(0);
        let gb = corr_ideals::buchberger(&[t.pow(2)], corr_ideals::TermOrder::Lex).unwrap();
        let quo = corr_ideals::quotient_basis(&gb, corr_ideals::TermOrder::Lex).unwrap();
        let alg = algebra_from_quotient(&quo).unwrap();
        // standard monomials are [1, t]: g = 3 + 5t.
        let g = vec![q.from_i64(3), q.from_i64(5)];
        assert_eq!(pushforward_ga(&alg, &g), q.from_i64(6));
    }

    #[test]
    fn gm_rejects_non_units() {
        let q = FieldTower::rationals();
        let r = corr_ideals::PolyRing::new(&q, &["t"]);
        let t = r.var(0);
        let gb = corr_ideals::buchberger(&[t.pow(2)], corr_ideals::TermOrder::Lex).unwrap();
        let quo = corr_ideals::quotient_basis(&gb, corr_ideals::TermOrder::Lex).unwrap();
        let alg = algebra_from_quotient(&quo).unwrap();
        // g = t is nilpotent, not a unit.
        let g = vec![q.zero(), q.one()];
        assert_eq!(pushforward_gm(&alg, &g).unwrap_err(), TransferError::NotAUnit);
    }

    #[test]
    fn coproduct_identity_on_fields() {
        // B1 = Q(i), B2 = Q(sqrt2), Gm, g1 = i, g2 = sqrt2:
        // both sides equal Nm(i) * Nm(sqrt2) = 1 * (-2) = -2.
        let (q, l1) = q_i();
        let l2 = q
            .extend_algebraic("r2", &UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]), IrreducibilityPolicy::Check)
            .unwrap();
        let b1 = algebra_from_extension(&l1, &q).unwrap();
        let b2 = algebra_from_extension(&l2, &q).unwrap();
        let g1 = extension_coords(&l1.generator(0), &q).unwrap();
        let g2 = extension_coords(&l2.generator(0), &q).unwrap();
        assert!(coproduct_pushforward_check(&b1, &b2, &g1, &g2, &GroupPlugin::Gm).unwrap());
        assert!(coproduct_pushforward_check(&b1, &b2, &g1, &g2, &GroupPlugin::Ga).unwrap());
        let prod = FiniteFreeAlgebra::product(&b1, &b2).unwrap();
        let mut g = g1.clone();
        g.extend(g2);
        assert_eq!(pushforward_gm(&prod, &g).unwrap(), q.from_i64(-2));
    }

    #[test]
    fn base_change_commutes_with_pushforward() {
        // Push forward over Q, then extend scalars to Q(sqrt2); equal to
        // extending first and pushing forward over Q(sqrt2).
        let (q, l) = q_i();
        let big = q
            .extend_algebraic("r2", &UniPoly::from_i64_coeffs(&q, &[-2, 0, 1]), IrreducibilityPolicy::Check)
            .unwrap();
        let alg = algebra_from_extension(&l, &q).unwrap();
        let alg_big = algebra_base_change(&alg, &big).unwrap();
        let g = extension_coords(&l.generator(0).add(&l.from_i64(2)), &q).unwrap();
        let g_big: Vec<_> = g.iter().map(|c| c.promote(&big).unwrap()).collect();
        for plugin in [GroupPlugin::Ga, GroupPlugin::Gm] {
            let small = pushforward(&alg, &plugin, &g).unwrap();
            let big_v = pushforward(&alg_big, &plugin, &g_big).unwrap();
            assert_eq!(small.promote(&big).unwrap(), big_v);
        }
    }

    #[test]
    fn basis_independence() {
        let (q, l) = q_i();
        let alg = algebra_from_extension(&l, &q).unwrap();
        // Swap, shear, and scale.
        let swap = Matrix::from_rows(
            &q,
            vec![
                vec![q.from_i64(0), q.from_i64(1)],
                vec![q.from_i64(1), q.from_i64(0)],
            ],
        );
        let shear = Matrix::from_rows(
            &q,
            vec![
                vec![q.from_i64(1), q.from_i64(1)],
                vec![q.from_i64(0), q.from_i64(1)],
            ],
        );
        let scale = Matrix::from_rows(
            &q,
            vec![
                vec![q.from_i64(3), q.from_i64(0)],
                vec![q.from_i64(0), q.from_i64(1)],
            ],
        );
        let samples = vec![
            vec![q.from_i64(1), q.from_i64(2)],
            vec![q.from_i64(-1), q.from_i64(5)],
            vec![q.from_i64(0), q.from_i64(1)],
        ];
        for p in [swap, shear, scale] {
            assert!(u_basis_independence_check(&alg, &p, &samples).unwrap());
        }
    }
}
