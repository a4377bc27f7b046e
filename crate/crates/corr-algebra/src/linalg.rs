//! Exact linear algebra over a field tower: rank, kernel, determinant,
//! characteristic and minimal polynomials.

use crate::error::AlgebraError;
use crate::tower::{FieldTower, TowerElem};
use crate::upoly::UniPoly;

/// A dense row-major matrix over one tower.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    tower: FieldTower,
    rows: usize,
    cols: usize,
    data: Vec<TowerElem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(tower: &FieldTower, rows: usize, cols: usize) -> Self {
        Matrix { tower: tower.clone(), rows, cols, data: vec![tower.zero(); rows * cols] }
    }

    pub fn identity(tower: &FieldTower, n: usize) -> Self {
        let mut m = Self::zero(tower, n, n);
        for i in 0..n {
            m.set(i, i, tower.one());
        }
        m
    }

    pub fn from_rows(tower: &FieldTower, rows: Vec<Vec<TowerElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for e in row {
                assert!(e.tower() == tower, "entry tower mismatch");
                data.push(e);
            }
        }
        Matrix { tower: tower.clone(), rows: r, cols: c, data }
    }

    pub fn from_fn(
        tower: &FieldTower,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TowerElem,
    ) -> Self {
        let mut m = Self::zero(tower, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &TowerElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TowerElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.tower, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(&self.tower, self.rows, other.cols, |i, j| {
            let mut acc = self.tower.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.tower, self.rows, self.cols, |i, j| self.at(i, j).add(other.at(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(&self.tower, self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn scale(&self, c: &TowerElem) -> Self {
        Self::from_fn(&self.tower, self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn apply(&self, v: &[TowerElem]) -> Vec<TowerElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.tower.zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc.add(&self.at(i, k).mul(x));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Result<TowerElem, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare);
        }
        let mut acc = self.tower.zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        Ok(acc)
    }

    /// Row echelon form. Returns (echelon matrix, pivot columns, det scale
    /// sign flips) — internal helper for rank/kernel/det.
    fn echelon(&self) -> (Matrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut sign = false;
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
                sign = !sign;
            }
            let inv = m.at(row, col).inv().expect("pivot nonzero");
            for r in (row + 1)..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).mul(&inv);
                for j in col..m.cols {
                    let v = m.at(r, j).sub(&factor.mul(m.at(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots, sign)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Result<TowerElem, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare);
        }
        if self.rows == 0 {
            return Ok(self.tower.one());
        }
        let (e, pivots, sign) = self.echelon();
        if pivots.len() < self.rows {
            return Ok(self.tower.zero());
        }
        let mut acc = self.tower.one();
        for i in 0..self.rows {
            acc = acc.mul(e.at(i, i));
        }
        if sign {
            acc = acc.neg();
        }
        Ok(acc)
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<TowerElem>> {
        let (e, pivots, _) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = vec![];
        for &f in &free {
            let mut v = vec![self.tower.zero(); self.cols];
            v[f] = self.tower.one();
            // Back-substitute pivot rows from the bottom.
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = self.tower.zero();
                for c in (pc + 1)..self.cols {
                    acc = acc.add(&e.at(r, c).mul(&v[c]));
                }
                let pv = e.at(r, pc).inv().expect("pivot nonzero");
                v[pc] = acc.neg().mul(&pv);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `A x = b`. Returns one solution or `None` when inconsistent.
    pub fn solve(&self, b: &[TowerElem]) -> Option<Vec<TowerElem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(&self.tower, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (e, pivots, _) = aug.echelon();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.tower.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = e.at(r, self.cols).clone();
            for c in (pc + 1)..self.cols {
                acc = acc.sub(&e.at(r, c).mul(&x[c]));
            }
            let pv = e.at(r, pc).inv().expect("pivot nonzero");
            x[pc] = acc.mul(&pv);
        }
        Some(x)
    }

    /// Characteristic polynomial via Hessenberg reduction; the 0x0 matrix
    /// has characteristic polynomial 1.
    pub fn char_poly(&self) -> Result<UniPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UniPoly::one(&self.tower));
        }
        // Similarity reduction to upper Hessenberg form.
        let mut h = self.clone();
        for col in 0..n.saturating_sub(2) {
            let Some(p) = ((col + 1)..n).find(|&r| !h.at(r, col).is_zero()) else {
                continue;
            };
            if p != col + 1 {
                for j in 0..n {
                    h.data.swap(p * n + j, (col + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + col + 1);
                }
            }
            let inv = h.at(col + 1, col).inv().expect("pivot nonzero");
            for r in (col + 2)..n {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let factor = h.at(r, col).mul(&inv);
                // row_r -= factor * row_{col+1}
                for j in 0..n {
                    let v = h.at(r, j).sub(&factor.mul(h.at(col + 1, j)));
                    h.set(r, j, v);
                }
                // col_{col+1} += factor * col_r  (inverse similarity)
                for i in 0..n {
                    let v = h.at(i, col + 1).add(&factor.mul(h.at(i, r)));
                    h.set(i, col + 1, v);
                }
            }
        }
        // char polys of leading principal minors of the Hessenberg matrix.
        let t = &self.tower;
        let x = UniPoly::var(t);
        let mut p: Vec<UniPoly> = vec![UniPoly::one(t)];
        for m in 1..=n {
            // p_m = (x - h[m-1][m-1]) p_{m-1}
            //       - sum_{i=1}^{m-1} h[m-1-i][m-1] (prod_{j=m-i}^{m-1} h[j][j-1]) p_{m-1-i}
            let mut pm = x.sub(&UniPoly::constant(h.at(m - 1, m - 1).clone())).mul(&p[m - 1]);
            let mut subdiag = t.one();
            for i in 1..m {
                subdiag = subdiag.mul(h.at(m - i, m - i - 1));
                if subdiag.is_zero() {
                    break;
                }
                let c = h.at(m - 1 - i, m - 1).mul(&subdiag);
                if !c.is_zero() {
                    pm = pm.sub(&p[m - 1 - i].mul_elem(&c));
                }
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    /// Minimal polynomial: the least-degree monic dependence among the
    /// powers of the matrix.
    pub fn min_poly(&self) -> Result<UniPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UniPoly::one(&self.tower));
        }
        // Vectorize powers I, M, M^2, ... and look for the first dependence.
        let mut powers: Vec<Matrix> = vec![Matrix::identity(&self.tower, n)];
        loop {
            let k = powers.len();
            let next = powers.last().unwrap().mul(self);
            // Rows of the dependence system: one column per power.
            let mut sys = Matrix::zero(&self.tower, n * n, k + 1);
            for (c, pw) in powers.iter().chain(std::iter::once(&next)).enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        sys.set(i * n + j, c, pw.at(i, j).clone());
                    }
                }
            }
            // Seek a combination with coefficient 1 on the last power.
            let rhs: Vec<TowerElem> = (0..n * n)
                .map(|idx| next.at(idx / n, idx % n).neg())
                .collect();
            let head = Matrix::from_fn(&self.tower, n * n, k, |i, j| sys.at(i, j).clone());
            if let Some(sol) = head.solve(&rhs) {
                let mut coeffs = sol;
                coeffs.push(self.tower.one());
                return Ok(UniPoly::from_coeffs(&self.tower, coeffs));
            }
            powers.push(next);
            assert!(powers.len() <= n + 1, "minimal polynomial search exceeded dimension");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTower {
        FieldTower::rationals()
    }

    fn mat(entries: &[&[i64]]) -> Matrix {
        let t = q();
        Matrix::from_rows(
            &t,
            entries.iter().map(|row| row.iter().map(|&v| t.from_i64(v)).collect()).collect(),
        )
    }

    #[test]
    fn identity_det_rank() {
        let m = Matrix::identity(&q(), 3);
        assert_eq!(m.det().unwrap(), q().from_i64(1));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rotation_char_poly() {
        // [[0,-1],[1,0]] has characteristic polynomial t^2 + 1.
        let m = mat(&[&[0, -1], &[1, 0]]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp, UniPoly::from_i64_coeffs(&q(), &[1, 0, 1]));
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = Matrix::zero(&q(), 2, 2);
        assert_eq!(m.kernel_basis().len(), 2);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn char_poly_matches_cofactor_expansion() {
        // Oracle: det(tI - M) via polynomial cofactor expansion.
        fn det_poly(entries: &mut Vec<Vec<UniPoly>>) -> UniPoly {
            let n = entries.len();
            let t = entries[0][0].tower().clone();
            if n == 1 {
                return entries[0][0].clone();
            }
            let mut acc = UniPoly::zero(&t);
            for i in 0..n {
                let mut minor: Vec<Vec<UniPoly>> = vec![];
                for r in 0..n {
                    if r == i {
                        continue;
                    }
                    minor.push(entries[r][1..].to_vec());
                }
                let mut term = entries[i][0].mul(&det_poly(&mut minor));
                if i % 2 == 1 {
                    term = term.neg();
                }
                acc = acc.add(&term);
            }
            acc
        }
        let m = mat(&[&[2, 1, 0], &[0, 1, -1], &[3, 0, 1]]);
        let t = q();
        let mut entries: Vec<Vec<UniPoly>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let e = UniPoly::constant(m.at(i, j).neg());
                        if i == j {
                            UniPoly::var(&t).add(&e)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(m.char_poly().unwrap(), det_poly(&mut entries));
    }

    #[test]
    fn min_poly_of_projection() {
        // diag(1,1,0): minimal polynomial t^2 - t.
        let m = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert_eq!(m.min_poly().unwrap(), UniPoly::from_i64_coeffs(&q(), &[0, -1, 1]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[1, 2], &[3, 4]]);
        let b = vec![q().from_i64(5), q().from_i64(11)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let sing = mat(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[q().from_i64(0), q().from_i64(1)]).is_none());
    }
}
