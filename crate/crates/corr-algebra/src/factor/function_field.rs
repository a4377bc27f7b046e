//! Factorization over a rational function field `K0(t)`: clear
//! denominators, reduce modulo a place where the image stays squarefree,
//! factor the residue, Hensel-lift modulo powers of the place, and
//! recombine factor subsets against the t-degree bound.

use crate::elems::small_elements;
use crate::error::AlgebraError;
use crate::tower::{FieldTower, IrreducibilityStatus, TowerElem};
use crate::upoly::UniPoly;

/// Bivariate polynomial: y-coefficients, each a polynomial in t over K0.
type Biv = Vec<UniPoly>;

fn biv_trim(mut v: Biv) -> Biv {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn biv_add(a: &[UniPoly], b: &[UniPoly], k0: &FieldTower) -> Biv {
    let n = a.len().max(b.len());
    let z = UniPoly::zero(k0);
    biv_trim((0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect())
}

fn biv_sub(a: &[UniPoly], b: &[UniPoly], k0: &FieldTower) -> Biv {
    let n = a.len().max(b.len());
    let z = UniPoly::zero(k0);
    biv_trim((0..n).map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z))).collect())
}

fn biv_mod(a: &[UniPoly], m: &UniPoly) -> Biv {
    biv_trim(a.iter().map(|c| c.rem(m).expect("modulus nonzero")).collect())
}

fn biv_mul_mod(a: &[UniPoly], b: &[UniPoly], m: &UniPoly, k0: &FieldTower) -> Biv {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![UniPoly::zero(k0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y).rem(m).unwrap());
        }
    }
    biv_trim(out.into_iter().map(|c| c.rem(m).unwrap()).collect())
}

/// Division by a y-monic divisor, coefficients mod `m`.
fn biv_divrem_mod(a: &[UniPoly], b: &[UniPoly], m: &UniPoly, k0: &FieldTower) -> (Biv, Biv) {
    assert!(b.last().unwrap().degree() == Some(0) && b.last().unwrap().coeff(0).is_one());
    let mut r = biv_mod(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![UniPoly::zero(k0); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap().clone();
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = r[k + i].sub(&c.mul(bc)).rem(m).unwrap();
        }
        r = biv_trim(r);
    }
    (biv_trim(q), r)
}

/// One quadratic Hensel step in K0[t][y] from modulus `m` to `m^2`;
/// `f`, `g`, `h` are y-monic.
fn hensel_step(
    f: &[UniPoly],
    g: &[UniPoly],
    h: &[UniPoly],
    s: &[UniPoly],
    t: &[UniPoly],
    m: &UniPoly,
    k0: &FieldTower,
) -> (Biv, Biv, Biv, Biv) {
    let m2 = m.mul(m);
    let e = biv_mod(&biv_sub(f, &biv_mul_mod(g, h, &m2, k0), k0), &m2);
    let (q, r) = biv_divrem_mod(&biv_mul_mod(s, &e, &m2, k0), h, &m2, k0);
    let g_star = biv_mod(
        &biv_add(
            &biv_add(&biv_mul_mod(t, &e, &m2, k0), &biv_mul_mod(&q, g, &m2, k0), k0),
            g,
            k0,
        ),
        &m2,
    );
    let h_star = biv_mod(&biv_add(h, &r, k0), &m2);
    let one: Biv = vec![UniPoly::one(k0)];
    let b = biv_mod(
        &biv_sub(
            &biv_add(
                &biv_mul_mod(s, &g_star, &m2, k0),
                &biv_mul_mod(t, &h_star, &m2, k0),
                k0,
            ),
            &one,
            k0,
        ),
        &m2,
    );
    let (c, d) = biv_divrem_mod(&biv_mul_mod(s, &b, &m2, k0), &h_star, &m2, k0);
    let s_star = biv_mod(&biv_sub(s, &d, k0), &m2);
    let t_star = biv_mod(
        &biv_sub(&biv_sub(t, &biv_mul_mod(t, &b, &m2, k0), k0), &biv_mul_mod(&c, &g_star, &m2, k0), k0),
        &m2,
    );
    (g_star, h_star, s_star, t_star)
}

/// An element of the residue field R = K0[t]/(q) as its canonical
/// polynomial representative of degree < deg q.
fn residue_to_poly(e: &TowerElem, k0: &FieldTower) -> UniPoly {
    UniPoly::from_coeffs(k0, e.top_alg_coords())
}

fn biv_from_residue_poly(g: &UniPoly, k0: &FieldTower) -> Biv {
    biv_trim(g.coeffs().iter().map(|c| residue_to_poly(c, k0)).collect())
}

/// Lift the residue factorization of y-monic `f` modulo `q` to modulus
/// `q^target_pow` (rounded up to a power-of-two tower of squarings).
fn hensel_multilift(
    f: &Biv,
    factors: &[UniPoly],
    q: &UniPoly,
    target: &UniPoly,
    k0: &FieldTower,
) -> Result<Vec<Biv>, AlgebraError> {
    if factors.len() == 1 {
        return Ok(vec![biv_mod(f, target)]);
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let rfield = factors[0].tower();
    let mut gm = UniPoly::one(rfield);
    for x in left {
        gm = gm.mul(x);
    }
    let mut hm = UniPoly::one(rfield);
    for x in right {
        hm = hm.mul(x);
    }
    let (one, s_r, t_r) = gm.exgcd(&hm)?;
    assert_eq!(one.degree(), Some(0), "residue factors must be coprime");
    let mut g = biv_from_residue_poly(&gm, k0);
    let mut h = biv_from_residue_poly(&hm, k0);
    let mut s = biv_from_residue_poly(&s_r, k0);
    let mut t = biv_from_residue_poly(&t_r, k0);
    let mut m = q.clone();
    while m.degree() < target.degree() {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m, k0);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = m.mul(&m);
    }
    let mut out = hensel_multilift(&g, left, q, target, k0)?;
    out.extend(hensel_multilift(&h, right, q, target, k0)?);
    Ok(out)
}

/// Candidate places: monic irreducibles over K0, degree 1 first.
fn places(k0: &FieldTower, budget: usize) -> Result<Vec<UniPoly>, AlgebraError> {
    let mut out = vec![];
    for c in small_elements(k0, budget) {
        out.push(UniPoly::from_coeffs(k0, vec![c.neg(), k0.one()]));
    }
    if out.len() >= budget {
        out.truncate(budget);
        return Ok(out);
    }
    // Finite coefficient pool: extend with irreducibles of higher degree.
    let pool = small_elements(k0, 64.min(budget));
    'deg: for d in 2..=4usize {
        let mut stack = vec![vec![]];
        while let Some(tuple) = stack.pop() {
            if tuple.len() == d {
                let mut coeffs: Vec<TowerElem> = tuple;
                coeffs.push(k0.one());
                let q = UniPoly::from_coeffs(k0, coeffs);
                if super::is_irreducible(&q)? {
                    out.push(q);
                    if out.len() >= budget {
                        break 'deg;
                    }
                }
                continue;
            }
            for c in &pool {
                let mut next = tuple.clone();
                next.push(c.clone());
                stack.push(next);
            }
        }
    }
    Ok(out)
}

/// Monic squarefree separable input over K = K0(t); returns monic
/// irreducible factors.
pub(crate) fn factor_squarefree_separable(f: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let k = f.tower().clone();
    let top = k.num_steps() - 1;
    let k0 = k.prefix(top);
    let n = f.degree().unwrap();
    // Clear denominators.
    let mut den_lcm = UniPoly::one(&k0);
    let parts: Vec<(UniPoly, UniPoly)> = f.coeffs().iter().map(|c| c.top_frac_parts()).collect();
    for (_, d) in &parts {
        let g = den_lcm.gcd(d)?;
        den_lcm = den_lcm.mul(&d.div_exact(&g));
    }
    let mut cpolys: Vec<UniPoly> = parts
        .iter()
        .map(|(num, d)| num.mul(&den_lcm.div_exact(d)))
        .collect();
    // Content strip.
    let mut cont = UniPoly::zero(&k0);
    for c in &cpolys {
        cont = cont.gcd(c)?;
    }
    if cont.degree().unwrap_or(0) > 0 {
        cpolys = cpolys.iter().map(|c| c.div_exact(&cont)).collect();
    }
    let l = cpolys[n].clone();
    // Monicize: G_j = C_j * l^(n-1-j), G_n = 1.
    let gbiv: Biv = cpolys
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j == n {
                UniPoly::one(&k0)
            } else {
                c.mul(&l.pow(n - 1 - j))
            }
        })
        .collect();
    let dt = gbiv.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    // G as a polynomial over K, for divisibility tests.
    let tgen = k.generator(top);
    let to_k = |c: &UniPoly| -> TowerElem { c.eval(&tgen) };
    let g_over_k = UniPoly::from_coeffs(&k, gbiv.iter().map(&to_k).collect());
    let place_budget = 4 * (2 * n + 2) * (dt + 2) + 16;
    for q in places(&k0, place_budget)? {
        let r = k0.extend_algebraic_with_status("~pl", &q, IrreducibilityStatus::Verified)?;
        let gamma = r.generator(r.num_steps() - 1);
        let gbar = UniPoly::from_coeffs(&r, gbiv.iter().map(|c| c.eval(&gamma)).collect());
        if gbar.degree() != Some(n) {
            continue;
        }
        let dbar = gbar.derivative();
        if dbar.is_zero() || gbar.gcd(&dbar)?.degree() != Some(0) {
            continue;
        }
        let modular = super::factor_monic(&gbar)?;
        if modular.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        let mod_factors: Vec<UniPoly> = modular.into_iter().map(|(g, _)| g).collect();
        // Lift to q^m with m*deg(q) > dt.
        let m_pow = dt / q.degree().unwrap() + 1;
        let target = q.pow(m_pow);
        // Round the working modulus up through squarings.
        let mut work = q.clone();
        while work.degree() < target.degree() {
            work = work.mul(&work);
        }
        let lifted = hensel_multilift(&biv_mod(&gbiv, &work), &mod_factors, &q, &work, &k0)?;
        // Recombine.
        let mut remaining = lifted;
        let mut g_current = g_over_k.clone();
        let mut found: Vec<UniPoly> = vec![];
        let mut size = 1usize;
        while 2 * size <= remaining.len() {
            let mut advanced = false;
            for combo in combinations(remaining.len(), size) {
                let mut cand: Biv = vec![UniPoly::one(&k0)];
                for &i in &combo {
                    cand = biv_mul_mod(&cand, &remaining[i], &work, &k0);
                }
                let cand_k = UniPoly::from_coeffs(&k, cand.iter().map(&to_k).collect());
                if cand_k.divides(&g_current) {
                    g_current = g_current.div_exact(&cand_k);
                    found.push(cand_k);
                    let mut keep = vec![];
                    for (i, x) in remaining.into_iter().enumerate() {
                        if !combo.contains(&i) {
                            keep.push(x);
                        }
                    }
                    remaining = keep;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                size += 1;
            }
        }
        if g_current.degree().unwrap_or(0) > 0 {
            found.push(g_current);
        }
        // Map factors of G(z) back to factors of f: h(y) = H(l y)/l^(deg H).
        let l_k = to_k(&l);
        let mut out = vec![];
        let mut check = UniPoly::one(&k);
        for h in found {
            let dh = h.degree().unwrap();
            let linv = l_k.inv()?;
            let coeffs: Vec<TowerElem> = h
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    // c * l^i / l^dh
                    let scale = if i >= dh {
                        l_k.pow((i - dh) as i64).unwrap()
                    } else {
                        linv.pow((dh - i) as i64).unwrap()
                    };
                    c.mul(&scale)
                })
                .collect();
            let piece = UniPoly::from_coeffs(&k, coeffs);
            check = check.mul(&piece);
            out.push(piece);
        }
        assert_eq!(check, *f, "recombined factors must reassemble the input");
        return Ok(out);
    }
    Err(AlgebraError::UnsupportedTower(
        "no place kept the polynomial squarefree".to_string(),
    ))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
