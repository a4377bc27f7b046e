//! Finite-extension computations over a tower prefix: coordinate
//! flattening, multiplication matrices, minimal polynomials, trace and
//! norm.

use crate::error::AlgebraError;
use crate::linalg::Matrix;
use crate::tower::{FieldTower, Repr, TowerElem};
use crate::upoly::UniPoly;

fn check_finite(tower: &FieldTower, prefix: &FieldTower) -> Result<usize, AlgebraError> {
    tower.degree_over(prefix)
}

/// The multiplicative basis of `tower` over `prefix`: products of powers of
/// the step generators above the prefix, in flattening order.
pub fn basis_over(
    tower: &FieldTower,
    prefix: &FieldTower,
) -> Result<Vec<TowerElem>, AlgebraError> {
    check_finite(tower, prefix)?;
    let mut basis = vec![tower.one()];
    for step in prefix.num_steps()..tower.num_steps() {
        let d = tower.step_degree(step).unwrap();
        let g = tower.generator(step);
        let mut next = Vec::with_capacity(basis.len() * d);
        let mut gp = tower.one();
        for j in 0..d {
            for b in &basis {
                next.push(gp.mul(b));
            }
            if j + 1 < d {
                gp = gp.mul(&g);
            }
        }
        basis = next;
    }
    Ok(basis)
}

fn flatten_repr(
    tower: &FieldTower,
    level: usize,
    prefix_level: usize,
    repr: &Repr,
    out: &mut Vec<TowerElem>,
    prefix: &FieldTower,
) {
    if level == prefix_level {
        out.push(TowerElem { tower: prefix.clone(), repr: repr.clone() });
        return;
    }
    let d = tower.step_degree(level - 1).expect("algebraic step");
    let Repr::Poly(coeffs) = repr else { panic!("expected algebraic-level repr") };
    let parent = tower.ctx_at(level - 1);
    for j in 0..d {
        let c = coeffs.get(j).cloned().unwrap_or_else(|| parent.zero());
        flatten_repr(tower, level - 1, prefix_level, &c, out, prefix);
    }
}

/// Coordinates of `a` in the basis from [`basis_over`], as elements of the
/// prefix tower.
pub fn coords_over(a: &TowerElem, prefix: &FieldTower) -> Result<Vec<TowerElem>, AlgebraError> {
    let tower = a.tower();
    check_finite(tower, prefix)?;
    let mut out = vec![];
    flatten_repr(tower, tower.num_steps(), prefix.num_steps(), &a.repr, &mut out, prefix);
    Ok(out)
}

/// Rebuild an element of `tower` from prefix coordinates.
pub fn elem_from_coords(
    tower: &FieldTower,
    prefix: &FieldTower,
    coords: &[TowerElem],
) -> Result<TowerElem, AlgebraError> {
    let basis = basis_over(tower, prefix)?;
    assert_eq!(basis.len(), coords.len(), "coordinate length mismatch");
    let mut acc = tower.zero();
    for (c, b) in coords.iter().zip(&basis) {
        acc = acc.add(&c.promote(tower)?.mul(b));
    }
    Ok(acc)
}

/// The matrix of multiplication by `a` on `tower` as a vector space over
/// `prefix`.
pub fn mult_matrix(a: &TowerElem, prefix: &FieldTower) -> Result<Matrix, AlgebraError> {
    let tower = a.tower();
    let basis = basis_over(tower, prefix)?;
    let n = basis.len();
    let mut m = Matrix::zero(prefix, n, n);
    for (j, b) in basis.iter().enumerate() {
        let col = coords_over(&a.mul(b), prefix)?;
        for (i, v) in col.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Monic least-degree polynomial over `prefix` vanishing on `a`, found by
/// linear dependence of the powers of `a`.
pub fn minimal_polynomial(
    a: &TowerElem,
    prefix: &FieldTower,
) -> Result<UniPoly, AlgebraError> {
    let tower = a.tower();
    let n = check_finite(tower, prefix)?;
    let mut power_coords: Vec<Vec<TowerElem>> = vec![];
    let mut pw = tower.one();
    for k in 0..=n {
        power_coords.push(coords_over(&pw, prefix)?);
        // Test whether the last power depends on the previous ones.
        let cols = k;
        let sys = Matrix::from_fn(prefix, n, cols, |i, j| power_coords[j][i].clone());
        let rhs: Vec<TowerElem> = power_coords[k].iter().map(|c| c.neg()).collect();
        if let Some(sol) = sys.solve(&rhs) {
            let mut coeffs = sol;
            coeffs.push(prefix.one());
            return Ok(UniPoly::from_coeffs(prefix, coeffs));
        }
        pw = pw.mul(a);
    }
    unreachable!("powers of an element in a degree-{n} extension must be dependent")
}

/// Trace and norm of `a` over a prefix: trace and determinant of the
/// multiplication matrix.
pub fn trace_and_norm(
    a: &TowerElem,
    prefix: &FieldTower,
) -> Result<(TowerElem, TowerElem), AlgebraError> {
    let m = mult_matrix(a, prefix)?;
    Ok((m.trace()?, m.det()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::IrreducibilityPolicy;

    fn q_i() -> FieldTower {
        let q = FieldTower::rationals();
        let mp = UniPoly::from_i64_coeffs(&q, &[1, 0, 1]);
        q.extend_algebraic("i", &mp, IrreducibilityPolicy::Check).unwrap()
    }

    #[test]
    fn norm_and_trace_of_one_plus_i() {
        // Multiplication matrix of 1+i on basis {1, i} is [[1,-1],[1,1]]:
        // trace 2, det 2.
        let f = q_i();
        let q = FieldTower::rationals();
        let a = f.one().add(&f.generator(0));
        let (tr, nm) = trace_and_norm(&a, &q).unwrap();
        assert_eq!(tr, q.from_i64(2));
        assert_eq!(nm, q.from_i64(2));
    }

    #[test]
    fn trace_of_identity_is_degree() {
        let f = q_i();
        let q = FieldTower::rationals();
        let (tr, nm) = trace_and_norm(&f.one(), &q).unwrap();
        assert_eq!(tr, q.from_i64(2));
        assert_eq!(nm, q.from_i64(1));
    }

    #[test]
    fn trace_of_f4_generator() {
        // F_4 = F_2(w), w^2 + w + 1 = 0: Tr(w) = w + w^2 = 1.
        let f2 = FieldTower::prime(2).unwrap();
        let mp = UniPoly::from_i64_coeffs(&f2, &[1, 1, 1]);
        let f4 = f2.extend_algebraic("w", &mp, IrreducibilityPolicy::Check).unwrap();
        let (tr, _) = trace_and_norm(&f4.generator(0), &f2).unwrap();
        assert_eq!(tr, f2.from_i64(1));
    }

    #[test]
    fn minimal_polynomials() {
        let f = q_i();
        let q = FieldTower::rationals();
        // i has minimal polynomial t^2 + 1.
        let mp = minimal_polynomial(&f.generator(0), &q).unwrap();
        assert_eq!(mp, UniPoly::from_i64_coeffs(&q, &[1, 0, 1]));
        // 1 + i has minimal polynomial t^2 - 2t + 2 (kernel of the power matrix).
        let a = f.one().add(&f.generator(0));
        let mp = minimal_polynomial(&a, &q).unwrap();
        assert_eq!(mp, UniPoly::from_i64_coeffs(&q, &[2, -2, 1]));
        // A rational constant has a linear minimal polynomial.
        let mp = minimal_polynomial(&f.from_i64(3), &q).unwrap();
        assert_eq!(mp, UniPoly::from_i64_coeffs(&q, &[-3, 1]));
    }

    #[test]
    fn not_finite_over_prefix() {
        let q = FieldTower::rationals();
        let k = q.extend_transcendental("x").unwrap();
        assert_eq!(
            minimal_polynomial(&k.generator(0), &q).unwrap_err(),
            AlgebraError::NotFiniteOverPrefix
        );
    }

    #[test]
    fn coords_roundtrip_in_nested_tower() {
        let f = q_i();
        let mp = UniPoly::from_i64_coeffs(&f, &[-2, 0, 1]); // t^2 - 2
        let g = f.extend_algebraic("r", &mp, IrreducibilityPolicy::Check).unwrap();
        let q = FieldTower::rationals();
        assert_eq!(g.degree_over(&q).unwrap(), 4);
        let a = g.generator(1).mul(&g.generator(0)).add(&g.from_i64(5));
        let coords = coords_over(&a, &q).unwrap();
        assert_eq!(coords.len(), 4);
        let back = elem_from_coords(&g, &q, &coords).unwrap();
        assert_eq!(back, a);
    }
}
