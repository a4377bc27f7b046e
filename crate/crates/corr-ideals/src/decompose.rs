//! Primary decomposition of zero-dimensional quotients into points with
//! residue fields and lengths.
//!
//! Strategy: pick a separating linear form, factor the minimal polynomial
//! of its multiplication matrix, split the quotient along the factor
//! kernels, and extract each point's coordinates as the unique eigenvalues
//! of the coordinate multiplications on the eigenspace over the residue
//! field. Every extraction is verified; failures fall through to the next
//! candidate form.

use corr_algebra::{factor, unique_root_of_power, FieldTower, Matrix, TowerElem, UniPoly};

use crate::error::IdealError;
use crate::quotient::ArtinianQuotient;

/// One point of the decomposition: a residue field presented as a tower
/// extension of the coefficient field, coordinates in it, and the length of
/// the local ring.
#[derive(Debug, Clone)]
pub struct DecomposedPoint {
    pub field: FieldTower,
    pub coords: Vec<TowerElem>,
    pub length: usize,
}

/// Deterministic separating-form candidates: coordinates first, then small
/// positive integer combinations enumerated in lexicographic order.
fn separating_candidates(n: usize, retries: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    for v in 0..n {
        let mut c = vec![0i64; n];
        c[v] = 1;
        out.push(c);
    }
    if n < 2 {
        // A single coordinate is the only linear form up to scaling.
        return out;
    }
    let mut bound = 0i64;
    while out.len() < retries {
        bound += 1;
        let mut stack: Vec<Vec<i64>> = vec![vec![]];
        while let Some(partial) = stack.pop() {
            if out.len() >= retries {
                break;
            }
            if partial.len() == n {
                // New at this bound: uses the bound, and is not a plain
                // coordinate (those were emitted first).
                if partial.iter().filter(|&&c| c != 0).count() >= 2
                    && partial.iter().any(|&c| c == bound)
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
    out.truncate(retries);
    out
}

/// Evaluate a polynomial at a matrix.
fn poly_at_matrix(p: &UniPoly, m: &Matrix) -> Matrix {
    let tower = m.tower().clone();
    let n = m.rows();
    let mut acc = Matrix::zero(&tower, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            acc.set(i, i, acc.at(i, i).add(c));
        }
    }
    acc
}

/// Restrict a matrix to an invariant subspace given by basis columns.
/// Returns `None` when the subspace is not invariant (a failed candidate).
fn restrict(m: &Matrix, basis: &[Vec<TowerElem>]) -> Option<Matrix> {
    let tower = m.tower().clone();
    let dim = basis.len();
    let amb = m.rows();
    let basis_mat = Matrix::from_fn(&tower, amb, dim, |i, j| basis[j][i].clone());
    let mut out = Matrix::zero(&tower, dim, dim);
    for (j, b) in basis.iter().enumerate() {
        let img = m.apply(b);
        let sol = basis_mat.solve(&img)?;
        for (i, v) in sol.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Some(out)
}

fn promote_matrix(m: &Matrix, to: &FieldTower) -> Matrix {
    Matrix::from_fn(to, m.rows(), m.cols(), |i, j| m.at(i, j).promote(to).unwrap())
}

/// Decompose a zero-dimensional quotient into its points.
///
/// Each returned point satisfies every Groebner basis element exactly, and
/// the lengths satisfy `sum(length_i * [field_i : K]) = dim`.
pub fn decompose_zero_dim(q: &ArtinianQuotient) -> Result<Vec<DecomposedPoint>, IdealError> {
    let dim = q.dim();
    if dim == 0 {
        return Ok(vec![]);
    }
    let tower = q.ring().tower().clone();
    let n = q.ring().num_vars();
    let retries = 8 * n * (dim + 2) + 32;
    'candidates: for cand in separating_candidates(n, retries) {
        // M_l = sum c_i * M_{x_i}
        let mut ml = Matrix::zero(&tower, dim, dim);
        for (i, &c) in cand.iter().enumerate() {
            if c != 0 {
                ml = ml.add(&q.mult_matrix(i).scale(&tower.from_i64(c)));
            }
        }
        let mp = ml.min_poly()?;
        let fac = factor(&mp)?;
        let mut points = vec![];
        let mut total = 0usize;
        for (fi, ei) in &fac.factors {
            let deg = fi.degree().unwrap();
            // Primary subspace.
            let wi = poly_at_matrix(&fi.pow(*ei as usize), &ml).kernel_basis();
            let di = wi.len();
            if di == 0 || di % deg != 0 {
                continue 'candidates;
            }
            total += di;
            // Residue field.
            let (lfield, gamma) = if deg == 1 {
                (tower.clone(), fi.coeff(0).neg())
            } else {
                let name = format!("r{}", tower.num_steps() + 1);
                let lf = tower.extend_algebraic_assume_irreducible(&name, fi)?;
                let g = lf.generator(lf.num_steps() - 1);
                (lf, g)
            };
            // Restrict all multiplications to the primary subspace, extend
            // scalars, and cut the eigenspace of the separating form.
            let Some(ml_w) = restrict(&ml, &wi) else { continue 'candidates };
            let ml_l = promote_matrix(&ml_w, &lfield);
            let mut shifted = ml_l.clone();
            for i in 0..shifted.rows() {
                shifted.set(i, i, shifted.at(i, i).sub(&gamma));
            }
            let eig = shifted.kernel_basis();
            if eig.is_empty() {
                continue 'candidates;
            }
            let mut coords = vec![];
            for v in 0..n {
                let Some(mv_w) = restrict(q.mult_matrix(v), &wi) else {
                    continue 'candidates;
                };
                let mv_l = promote_matrix(&mv_w, &lfield);
                let Some(mv_e) = restrict(&mv_l, &eig) else { continue 'candidates };
                let mu = mv_e.min_poly()?;
                let Some(c) = unique_root_of_power(&mu) else { continue 'candidates };
                coords.push(c);
            }
            // The point must satisfy the ideal exactly.
            for g in q.groebner_basis() {
                if !g.eval(&coords).is_zero() {
                    continue 'candidates;
                }
            }
            points.push(DecomposedPoint { field: lfield, coords, length: di / deg });
        }
        if total != dim {
            continue 'candidates;
        }
        return Ok(points);
    }
    Err(IdealError::SeparatingFormNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::quotient::quotient_basis;
    use crate::ring::PolyRing;
    use crate::TermOrder;

    fn decompose_one_var(coeffs: &[i64], tower: &FieldTower) -> Vec<DecomposedPoint> {
        let r = PolyRing::new(tower, &["x"]);
        let f = UniPoly::from_i64_coeffs(tower, coeffs);
        let poly = crate::ring::MultiPoly::from_terms(
            &r,
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone()))
                .collect(),
        );
        let gb = buchberger(&[poly], TermOrder::Lex).unwrap();
        let q = quotient_basis(&gb, TermOrder::Lex).unwrap();
        decompose_zero_dim(&q).unwrap()
    }

    #[test]
    fn univariate_with_multiplicity() {
        // (x-1)^2 (x-2): points x=1 (length 2) and x=2 (length 1).
        let q = FieldTower::rationals();
        // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
        let mut pts = decompose_one_var(&[-2, 5, -4, 1], &q);
        pts.sort_by_key(|p| p.coords[0].render());
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].coords[0], q.from_i64(1));
        assert_eq!(pts[0].length, 2);
        assert_eq!(pts[1].coords[0], q.from_i64(2));
        assert_eq!(pts[1].length, 1);
    }

    #[test]
    fn irrational_point() {
        // x^2 - 2 over Q: one point with residue field Q(sqrt 2), length 1.
        let q = FieldTower::rationals();
        let pts = decompose_one_var(&[-2, 0, 1], &q);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].length, 1);
        assert_eq!(pts[0].field.degree_over(&q).unwrap(), 2);
        // The coordinate squares to 2.
        let c = &pts[0].coords[0];
        assert_eq!(c.mul(c), pts[0].field.from_i64(2));
    }

    #[test]
    fn rational_point() {
        let q = FieldTower::rationals();
        let pts = decompose_one_var(&[-7, 1], &q);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].length, 1);
        assert_eq!(pts[0].coords[0], q.from_i64(7));
    }

    #[test]
    fn conservation_two_vars() {
        // <x^2 - 2, y^2 - 2>: over Q splits into two points with residue
        // field Q(sqrt2) (y = x and y = -x on the same quadratic field):
        // total 1*2 + 1*2 = 4 = dim.
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let gb = buchberger(
            &[x.pow(2).sub(&r.from_i64(2)), y.pow(2).sub(&r.from_i64(2))],
            TermOrder::DegRevLex,
        )
        .unwrap();
        let quo = quotient_basis(&gb, TermOrder::DegRevLex).unwrap();
        assert_eq!(quo.dim(), 4);
        let pts = decompose_zero_dim(&quo).unwrap();
        let total: usize = pts
            .iter()
            .map(|p| p.length * p.field.degree_over(&q).unwrap())
            .sum();
        assert_eq!(total, 4);
        assert_eq!(pts.len(), 2);
        for p in &pts {
            for g in quo.groebner_basis() {
                assert!(g.eval(&p.coords).is_zero());
            }
        }
    }

    #[test]
    fn fat_point_at_origin() {
        // k[x,y]/<x^2, xy, y^2>: one point at the origin with length 3.
        let q = FieldTower::rationals();
        let r = PolyRing::new(&q, &["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let gb =
            buchberger(&[x.pow(2), x.mul(&y), y.pow(2)], TermOrder::DegRevLex).unwrap();
        let quo = quotient_basis(&gb, TermOrder::DegRevLex).unwrap();
        let pts = decompose_zero_dim(&quo).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].length, 3);
        assert!(pts[0].coords.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn inseparable_residue_field() {
        // F_2(s)[y]/<y^2 - s>: one point with purely inseparable residue
        // field of degree 2, length 1.
        let k = FieldTower::prime(2).unwrap().extend_transcendental("s").unwrap();
        let s = k.generator(0);
        let r = PolyRing::new(&k, &["y"]);
        let y = r.var(0);
        let f = y.pow(2).sub(&r.constant(s.clone()));
        let gb = buchberger(&[f], TermOrder::Lex).unwrap();
        let quo = quotient_basis(&gb, TermOrder::Lex).unwrap();
        let pts = decompose_zero_dim(&quo).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].length, 1);
        assert_eq!(pts[0].field.degree_over(&k).unwrap(), 2);
        let c = &pts[0].coords[0];
        assert_eq!(c.mul(c), s.promote(&pts[0].field).unwrap());
    }

    #[test]
    fn nonreduced_point_with_extension() {
        // k[x]/<(x^2-2)^2>: one point, residue Q(sqrt2), length 2;
        // conservation 2*2 = 4.
        let q = FieldTower::rationals();
        let pts = decompose_one_var(&[4, 0, -4, 0, 1], &q);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].length, 2);
        assert_eq!(pts[0].field.degree_over(&q).unwrap(), 2);
    }
}
