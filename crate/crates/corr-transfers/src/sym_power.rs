//! Symmetric powers of a finite free algebra: the orbit basis of B^(sym d),
//! the action on the top exterior power, the functional u, the splitting p
//! for product algebras, and group-plugin pushforwards.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::TransferError;
use crate::ring_ops::CommRing;

/// An S_d-orbit of index tuples: a sorted multiset of basis indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitIndex(Vec<usize>);

impl OrbitIndex {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        OrbitIndex(indices)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All distinct tuples in the orbit (the distinct permutations of the
    /// multiset).
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let mut items = self.0.clone();
        let mut out = vec![];
        permute_distinct(&mut items, 0, &mut out);
        out
    }
}

fn permute_distinct(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    let mut seen = vec![];
    for i in k..items.len() {
        if seen.contains(&items[i]) {
            continue;
        }
        seen.push(items[i]);
        items.swap(k, i);
        permute_distinct(items, k + 1, out);
        items.swap(k, i);
    }
}

/// All multisets of size `d` drawn from the window `[lo, hi]`, enumerated
/// lexicographically. For the window `[1, d]` there are C(2d-1, d) of them.
pub fn orbit_basis(d: usize, window: (usize, usize)) -> Vec<OrbitIndex> {
    let (lo, hi) = window;
    assert!(lo <= hi, "window must be nonempty");
    let mut out = vec![];
    let mut cur = vec![];
    fn go(lo: usize, hi: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<OrbitIndex>) {
        if cur.len() == d {
            out.push(OrbitIndex(cur.clone()));
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            go(lo, hi, d, cur, out);
            cur.pop();
        }
    }
    go(lo, hi, d, &mut cur, &mut out);
    out
}

/// A commutative algebra, free of finite rank over its base ring, given by
/// structure constants. Commutativity, associativity and the unit laws are
/// checked at construction.
#[derive(Clone)]
pub struct FiniteFreeAlgebra<R: CommRing> {
    base: R,
    rank: usize,
    basis_names: Vec<String>,
    /// structure[i][j] = coordinates of e_i * e_j.
    structure: Vec<Vec<Vec<R::Elem>>>,
    /// Coordinates of the multiplicative unit.
    unit: Vec<R::Elem>,
}

impl<R: CommRing> FiniteFreeAlgebra<R> {
    pub fn new(
        base: R,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<R::Elem>>>,
        unit: Vec<R::Elem>,
    ) -> Result<Arc<Self>, TransferError> {
        let rank = basis_names.len();
        let shape_ok = structure.len() == rank
            && structure.iter().all(|row| {
                row.len() == rank && row.iter().all(|v| v.len() == rank)
            })
            && unit.len() == rank;
        if !shape_ok || rank == 0 {
            return Err(TransferError::MalformedAlgebra("shape".into()));
        }
        let alg =
            FiniteFreeAlgebra { base, rank, basis_names, structure, unit };
        // Commutativity.
        for i in 0..rank {
            for j in 0..rank {
                if alg.structure[i][j] != alg.structure[j][i] {
                    return Err(TransferError::MalformedAlgebra("commutativity".into()));
                }
            }
        }
        // Unit laws.
        for i in 0..rank {
            let ei = alg.basis_vec(i);
            if alg.mul_vec(&alg.unit, &ei) != ei {
                return Err(TransferError::MalformedAlgebra("unit law".into()));
            }
        }
        // Associativity on basis triples.
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let left = alg.mul_vec(&alg.structure[i][j].clone(), &alg.basis_vec(k));
                    let right = alg.mul_vec(&alg.basis_vec(i), &alg.structure[j][k].clone());
                    if left != right {
                        return Err(TransferError::MalformedAlgebra("associativity".into()));
                    }
                }
            }
        }
        Ok(Arc::new(alg))
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[R::Elem] {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.rank];
        v[i] = self.base.one();
        v
    }

    /// Coordinates of `e_i * e_j`.
    pub fn structure_const(&self, i: usize, j: usize, k: usize) -> R::Elem {
        self.structure[i][j][k].clone()
    }

    pub fn structure_row(&self, i: usize, j: usize) -> &[R::Elem] {
        &self.structure[i][j]
    }

    pub fn zero_vec(&self) -> Vec<R::Elem> {
        vec![self.base.zero(); self.rank]
    }

    pub fn add_vec(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    pub fn scale_vec(&self, c: &R::Elem, a: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().map(|x| self.base.mul(c, x)).collect()
    }

    pub fn mul_vec(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let mut out = self.zero_vec();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.base.is_zero(y) {
                    continue;
                }
                let xy = self.base.mul(x, y);
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !self.base.is_zero(c) {
                        out[k] = self.base.add(&out[k], &self.base.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    /// Product of several basis elements, in B.
    pub fn basis_product(&self, indices: &[usize]) -> Vec<R::Elem> {
        let mut acc = self.unit.clone();
        for &i in indices {
            acc = self.mul_vec(&acc, &self.basis_vec(i));
        }
        acc
    }

    /// The direct product algebra B1 x B2 with the concatenated basis.
    pub fn product(a: &Self, b: &Self) -> Result<Arc<Self>, TransferError> {
        let rank = a.rank + b.rank;
        let mut names = a.basis_names.clone();
        names.extend(b.basis_names.iter().cloned());
        let zero = a.base.zero();
        let mut structure = vec![vec![vec![zero.clone(); rank]; rank]; rank];
        for i in 0..a.rank {
            for j in 0..a.rank {
                for k in 0..a.rank {
                    structure[i][j][k] = a.structure[i][j][k].clone();
                }
            }
        }
        for i in 0..b.rank {
            for j in 0..b.rank {
                for k in 0..b.rank {
                    structure[a.rank + i][a.rank + j][a.rank + k] =
                        b.structure[i][j][k].clone();
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        Self::new(a.base.clone(), names, structure, unit)
    }
}

/// Determinant over a commutative ring (division-free Laplace expansion
/// with subset memoization on columns).
pub fn ring_det<R: CommRing>(ring: &R, n: usize, entry: &dyn Fn(usize, usize) -> R::Elem) -> R::Elem {
    if n == 0 {
        return ring.one();
    }
    // memo[mask] = determinant of the submatrix on rows `mask` and the
    // first popcount(mask) columns.
    let full = (1usize << n) - 1;
    let mut memo: Vec<Option<R::Elem>> = vec![None; full + 1];
    memo[0] = Some(ring.one());
    fn det_rec<R: CommRing>(
        ring: &R,
        mask: usize,
        entry: &dyn Fn(usize, usize) -> R::Elem,
        memo: &mut Vec<Option<R::Elem>>,
    ) -> R::Elem {
        if let Some(v) = &memo[mask] {
            return v.clone();
        }
        let col = mask.count_ones() as usize - 1;
        let mut acc = ring.zero();
        // Expansion along the last used column: sign (-1)^(pos(row) + col).
        let mut sign = col % 2 == 1;
        let mut m = mask;
        while m != 0 {
            let row = m.trailing_zeros() as usize;
            m &= m - 1;
            let e = entry(row, col);
            if !ring.is_zero(&e) {
                let sub = det_rec(ring, mask & !(1 << row), entry, memo);
                let term = ring.mul(&e, &sub);
                acc = if sign { ring.sub(&acc, &term) } else { ring.add(&acc, &term) };
            }
            sign = !sign;
        }
        memo[mask] = Some(acc.clone());
        acc
    }
    det_rec(ring, full, entry, &mut memo)
}

/// An element of B^(sym d) in the orbit basis.
#[derive(Clone)]
pub struct SymElem<R: CommRing> {
    algebra: Arc<FiniteFreeAlgebra<R>>,
    degree: usize,
    coeffs: BTreeMap<OrbitIndex, R::Elem>,
}

impl<R: CommRing> SymElem<R> {
    pub fn new(
        algebra: &Arc<FiniteFreeAlgebra<R>>,
        degree: usize,
        coeffs: Vec<(OrbitIndex, R::Elem)>,
    ) -> Self {
        let base = algebra.base().clone();
        let mut map = BTreeMap::new();
        for (o, c) in coeffs {
            assert_eq!(o.len(), degree);
            let v = match map.remove(&o) {
                Some(prev) => base.add(&prev, &c),
                None => c,
            };
            if !base.is_zero(&v) {
                map.insert(o, v);
            }
        }
        SymElem { algebra: algebra.clone(), degree, coeffs: map }
    }

    pub fn unit(algebra: &Arc<FiniteFreeAlgebra<R>>, degree: usize) -> Self {
        // 1^(tensor d), expanded in the orbit basis.
        symmetrize_power(algebra, &algebra.unit().to_vec(), degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&OrbitIndex, &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, o: &OrbitIndex) -> R::Elem {
        self.coeffs.get(o).cloned().unwrap_or_else(|| self.algebra.base().zero())
    }

    pub fn eq_elem(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

/// Expand `b^(tensor d)` in the orbit basis: the coefficient on an orbit is
/// the product of the coordinates of a representative tuple.
pub fn symmetrize_power<R: CommRing>(
    algebra: &Arc<FiniteFreeAlgebra<R>>,
    b: &[R::Elem],
    d: usize,
) -> SymElem<R> {
    let base = algebra.base().clone();
    let mut coeffs = vec![];
    for orbit in orbit_basis(d, (0, algebra.rank() - 1)) {
        let mut c = base.one();
        for &i in orbit.entries() {
            c = base.mul(&c, &b[i]);
        }
        coeffs.push((orbit, c));
    }
    SymElem::new(algebra, d, coeffs)
}

/// Expand `sum_slots 1 x ... x b x ... x 1` in the orbit basis: the
/// coefficient on a tuple is `sum_k b_(i_k) prod_(l != k) unit_(i_l)`.
pub fn symmetrize_slot_sum<R: CommRing>(
    algebra: &Arc<FiniteFreeAlgebra<R>>,
    b: &[R::Elem],
    d: usize,
) -> SymElem<R> {
    let base = algebra.base().clone();
    let unit = algebra.unit().to_vec();
    let mut coeffs = vec![];
    for orbit in orbit_basis(d, (0, algebra.rank() - 1)) {
        let tuple = orbit.entries();
        let mut c = base.zero();
        for k in 0..d {
            let mut term = b[tuple[k]].clone();
            for (l, &i) in tuple.iter().enumerate() {
                if l != k {
                    term = base.mul(&term, &unit[i]);
                }
            }
            c = base.add(&c, &term);
        }
        coeffs.push((orbit, c));
    }
    SymElem::new(algebra, d, coeffs)
}

/// Multiply two orbit-basis elements: expand into pure tensors, multiply
/// slotwise via the structure constants, and re-collect on the orbit basis.
/// Panics if the product fails the symmetry self-check.
pub fn sym_multiply<R: CommRing>(a: &SymElem<R>, b: &SymElem<R>) -> SymElem<R> {
    assert_eq!(a.degree, b.degree, "degree mismatch");
    let algebra = a.algebra.clone();
    let base = algebra.base().clone();
    let d = a.degree;
    // Sparse tensor accumulation over pure tensor tuples.
    let mut tensor: BTreeMap<Vec<usize>, R::Elem> = BTreeMap::new();
    for (oa, ca) in &a.coeffs {
        for (ob, cb) in &b.coeffs {
            let cab = base.mul(ca, cb);
            for ta in oa.tuples() {
                for tb in ob.tuples() {
                    // Slotwise product: distribute over basis expansions.
                    let mut partial: Vec<(Vec<usize>, R::Elem)> =
                        vec![(vec![], cab.clone())];
                    for k in 0..d {
                        let prod = &algebra.structure[ta[k]][tb[k]];
                        let mut next = vec![];
                        for (prefix, coeff) in &partial {
                            for (m, c) in prod.iter().enumerate() {
                                if base.is_zero(c) {
                                    continue;
                                }
                                let mut p = prefix.clone();
                                p.push(m);
                                next.push((p, base.mul(coeff, c)));
                            }
                        }
                        partial = next;
                    }
                    for (tuple, c) in partial {
                        let v = match tensor.remove(&tuple) {
                            Some(prev) => base.add(&prev, &c),
                            None => c,
                        };
                        if !base.is_zero(&v) {
                            tensor.insert(tuple, v);
                        }
                    }
                }
            }
        }
    }
    // Symmetry self-check and collection on representatives.
    let mut coeffs: Vec<(OrbitIndex, R::Elem)> = vec![];
    let mut seen: BTreeMap<OrbitIndex, R::Elem> = BTreeMap::new();
    for (tuple, c) in &tensor {
        let orbit = OrbitIndex::new(tuple.clone());
        match seen.get(&orbit) {
            Some(prev) => assert!(prev == c, "product tensor is not symmetric"),
            None => {
                seen.insert(orbit.clone(), c.clone());
                coeffs.push((orbit, c.clone()));
            }
        }
    }
    SymElem::new(&algebra, d, coeffs)
}

/// The functional u on the orbit basis of B^(sym d): the action of each
/// e_Gamma on the top wedge of the basis, computed through one symbolic
/// determinant whose entries are linear forms in d formal variables.
pub fn u_map<R: CommRing>(
    algebra: &Arc<FiniteFreeAlgebra<R>>,
    d: usize,
) -> BTreeMap<OrbitIndex, R::Elem> {
    let base = algebra.base().clone();
    let n = algebra.rank();
    assert_eq!(n, d, "u is defined when B is free of rank d");
    // Entry (m, k) of the symbolic matrix: coefficient of e_m in
    // (sum_j lambda_j e_j) e_k = sum_j lambda_j (e_j e_k).
    // A "polynomial" maps exponent vectors of lambda to ring elements.
    type Poly<E> = BTreeMap<Vec<u8>, E>;
    let entries: Vec<Vec<Poly<R::Elem>>> = (0..n)
        .map(|m| {
            (0..n)
                .map(|k| {
                    let mut p: Poly<R::Elem> = BTreeMap::new();
                    for j in 0..n {
                        let c = algebra.structure[j][k][m].clone();
                        if !base.is_zero(&c) {
                            let mut exp = vec![0u8; n];
                            exp[j] = 1;
                            p.insert(exp, c);
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let poly_ring = PolyRingOps { base: base.clone(), nvars: n };
    let det = ring_det(&poly_ring, n, &|m, k| entries[m][k].clone());
    // u(e_Gamma) = coefficient of lambda^Gamma.
    let mut out = BTreeMap::new();
    for orbit in orbit_basis(d, (0, n - 1)) {
        let mut exp = vec![0u8; n];
        for &i in orbit.entries() {
            exp[i] += 1;
        }
        let c = det.get(&exp).cloned().unwrap_or_else(|| base.zero());
        out.insert(orbit, c);
    }
    out
}

/// Multivariate polynomials over R as a CommRing, just enough for the
/// symbolic determinant in `u_map`.
#[derive(Clone)]
struct PolyRingOps<R: CommRing> {
    base: R,
    nvars: usize,
}

impl<R: CommRing> CommRing for PolyRingOps<R> {
    type Elem = BTreeMap<Vec<u8>, R::Elem>;

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }

    fn one(&self) -> Self::Elem {
        let mut m = BTreeMap::new();
        m.insert(vec![0u8; self.nvars], self.base.one());
        m
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (e, c) in b {
            let v = match out.remove(e) {
                Some(prev) => self.base.add(&prev, c),
                None => c.clone(),
            };
            if !self.base.is_zero(&v) {
                out.insert(e.clone(), v);
            }
        }
        out
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|(e, c)| (e.clone(), self.base.neg(c))).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = self.base.mul(ca, cb);
                let v = match out.remove(&e) {
                    Some(prev) => self.base.add(&prev, &c),
                    None => c,
                };
                if !self.base.is_zero(&v) {
                    out.insert(e, v);
                }
            }
        }
        out
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1 && a.iter().all(|(e, c)| {
            e.iter().all(|&x| x == 0) && self.base.is_unit(c)
        })
    }
}

/// Evaluate the u functional on a symmetric element.
pub fn u_apply<R: CommRing>(
    u: &BTreeMap<OrbitIndex, R::Elem>,
    x: &SymElem<R>,
    base: &R,
) -> R::Elem {
    let mut acc = base.zero();
    for (o, c) in x.coeffs() {
        let uo = u.get(o).expect("orbit in range");
        acc = base.add(&acc, &base.mul(c, uo));
    }
    acc
}

/// The splitting p for a product algebra: e_Gamma maps to
/// e_Gamma1 (x) e_Gamma2 exactly when Gamma concatenates a d1-multiset in
/// B1's window with a d2-multiset in B2's window; otherwise to 0.
pub fn split_p(
    d1: usize,
    d2: usize,
) -> BTreeMap<OrbitIndex, Option<(OrbitIndex, OrbitIndex)>> {
    let mut out = BTreeMap::new();
    for orbit in orbit_basis(d1 + d2, (0, d1 + d2 - 1)) {
        let left: Vec<usize> =
            orbit.entries().iter().copied().filter(|&i| i < d1).collect();
        let right: Vec<usize> =
            orbit.entries().iter().copied().filter(|&i| i >= d1).collect();
        let value = if left.len() == d1 && right.len() == d2 {
            Some((OrbitIndex::new(left), OrbitIndex::new(right)))
        } else {
            None
        };
        out.insert(orbit, value);
    }
    out
}

/// Verify the matrix identity (u (x) u) o p = u on the product algebra.
pub fn split_p_identity_holds<R: CommRing>(
    b1: &Arc<FiniteFreeAlgebra<R>>,
    b2: &Arc<FiniteFreeAlgebra<R>>,
) -> Result<bool, TransferError> {
    let base = b1.base().clone();
    let d1 = b1.rank();
    let d2 = b2.rank();
    let prod = FiniteFreeAlgebra::product(b1, b2)?;
    let u = u_map(&prod, d1 + d2);
    let u1 = u_map(b1, d1);
    let u2 = u_map(b2, d2);
    let p = split_p(d1, d2);
    for (orbit, image) in &p {
        let lhs = match image {
            Some((g1, g2)) => {
                let shift: Vec<usize> =
                    g2.entries().iter().map(|&i| i - d1).collect();
                base.mul(&u1[g1], &u2[&OrbitIndex::new(shift)])
            }
            None => base.zero(),
        };
        if lhs != u[orbit] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use corr_algebra::FieldTower;

    /// k[t]/(t^2) with basis (t, 1).
    fn dual_numbers(q: &FieldTower) -> Arc<FiniteFreeAlgebra<FieldTower>> {
        let z = q.zero();
        let o = q.one();
        FiniteFreeAlgebra::new(
            q.clone(),
            vec!["t".into(), "1".into()],
            vec![
                vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]],
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            ],
            vec![z.clone(), o.clone()],
        )
        .unwrap()
    }

    /// k x k with the idempotent basis.
    fn split_quadratic(q: &FieldTower) -> Arc<FiniteFreeAlgebra<FieldTower>> {
        let z = q.zero();
        let o = q.one();
        FiniteFreeAlgebra::new(
            q.clone(),
            vec!["e1".into(), "e2".into()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
                vec![vec![z.clone(), z.clone()], vec![z.clone(), o.clone()]],
            ],
            vec![o.clone(), o.clone()],
        )
        .unwrap()
    }

    #[test]
    fn orbit_counts() {
        // d=2, window [1,2]: 3 orbits; d=3, [1,2]: C(4,3) = 4; d=1: n singletons.
        assert_eq!(orbit_basis(2, (1, 2)).len(), 3);
        assert_eq!(orbit_basis(3, (1, 2)).len(), 4);
        assert_eq!(orbit_basis(1, (1, 7)).len(), 7);
        // C(2d-1, d) for window [1, d].
        for d in 1..=5usize {
            let count = orbit_basis(d, (1, d)).len();
            let binom = |n: usize, k: usize| -> usize {
                let mut acc = 1usize;
                for i in 0..k {
                    acc = acc * (n - i) / (i + 1);
                }
                acc
            };
            assert_eq!(count, binom(2 * d - 1, d));
        }
    }

    #[test]
    fn u_on_dual_numbers() {
        // B = k[t]/(t^2), basis e1 = t, e2 = 1: u(e_{(2,2)}) = 1, others 0.
        let q = FieldTower::rationals();
        let b = dual_numbers(&q);
        let u = u_map(&b, 2);
        assert_eq!(u[&OrbitIndex::new(vec![1, 1])], q.from_i64(1));
        assert_eq!(u[&OrbitIndex::new(vec![0, 1])], q.from_i64(0));
        assert_eq!(u[&OrbitIndex::new(vec![0, 0])], q.from_i64(0));
    }

    #[test]
    fn u_on_split_algebra() {
        // B = k x k idempotents: u(e_{(1,2)}) = 1, diagonal orbits 0.
        let q = FieldTower::rationals();
        let b = split_quadratic(&q);
        let u = u_map(&b, 2);
        assert_eq!(u[&OrbitIndex::new(vec![0, 1])], q.from_i64(1));
        assert_eq!(u[&OrbitIndex::new(vec![0, 0])], q.from_i64(0));
        assert_eq!(u[&OrbitIndex::new(vec![1, 1])], q.from_i64(0));
    }

    #[test]
    fn u_of_unit_power_is_one() {
        let q = FieldTower::rationals();
        for b in [dual_numbers(&q), split_quadratic(&q)] {
            let u = u_map(&b, 2);
            let unit = SymElem::unit(&b, 2);
            assert_eq!(u_apply(&u, &unit, &q), q.from_i64(1));
        }
    }

    #[test]
    fn sym_multiply_examples() {
        let q = FieldTower::rationals();
        // In k[t]/(t^2), d=2: e_{(t,t)} squared = (t (x) t)^2 = 0.
        let b = dual_numbers(&q);
        let e_tt = SymElem::new(&b, 2, vec![(OrbitIndex::new(vec![0, 0]), q.one())]);
        let sq = sym_multiply(&e_tt, &e_tt);
        assert!(sq.coeffs().next().is_none());
        // Unit acts as identity.
        let unit = SymElem::unit(&b, 2);
        assert!(sym_multiply(&e_tt, &unit).eq_elem(&e_tt));
        // In k x k: e_{(1,2)}^2 = e_{(1,2)}.
        let s = split_quadratic(&q);
        let e12 = SymElem::new(&s, 2, vec![(OrbitIndex::new(vec![0, 1]), q.one())]);
        assert!(sym_multiply(&e12, &e12).eq_elem(&e12));
    }

    #[test]
    fn split_p_cases() {
        // d2 = 0: identity; orbits inside B1's window with d2 > 0 map to 0.
        let p = split_p(2, 1);
        assert_eq!(p[&OrbitIndex::new(vec![0, 0, 0])], None);
        assert_eq!(
            p[&OrbitIndex::new(vec![0, 1, 2])],
            Some((OrbitIndex::new(vec![0, 1]), OrbitIndex::new(vec![2])))
        );
        let p0 = split_p(2, 0);
        for (o, img) in &p0 {
            assert_eq!(img.as_ref().unwrap().0, *o);
        }
    }

    #[test]
    fn split_identity_on_small_pairs() {
        let q = FieldTower::rationals();
        let b1 = dual_numbers(&q);
        let b2 = split_quadratic(&q);
        assert!(split_p_identity_holds(&b1, &b2).unwrap());
        assert!(split_p_identity_holds(&b2, &b1).unwrap());
        assert!(split_p_identity_holds(&b1, &b1).unwrap());
    }
}
