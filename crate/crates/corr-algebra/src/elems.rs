//! Deterministic enumeration of "small" tower elements, used for shift and
//! evaluation-point searches.

use crate::tower::{FieldTower, TowerElem};

/// A deterministic list of distinct elements: integers first, then small
/// combinations of generator powers. For finite towers the list may be
/// shorter than `limit`.
pub fn small_elements(tower: &FieldTower, limit: usize) -> Vec<TowerElem> {
    let mut out: Vec<TowerElem> = vec![];
    let push = |e: TowerElem, out: &mut Vec<TowerElem>| {
        if !out.contains(&e) {
            out.push(e);
        }
    };
    let p = tower.characteristic();
    let int_cap = if p == 0 { limit as i64 } else { (p as i64).min(limit as i64) };
    let mut ints = vec![];
    if p == 0 {
        let mut k = 0i64;
        while ints.len() < int_cap as usize {
            ints.push(k);
            if k > 0 {
                ints.push(-k);
            }
            k += 1;
        }
    } else {
        ints.extend(0..int_cap);
    }
    for &n in &ints {
        push(tower.from_i64(n), &mut out);
        if out.len() >= limit {
            return out;
        }
    }
    if tower.num_steps() == 0 {
        return out;
    }
    let gens: Vec<TowerElem> = (0..tower.num_steps()).map(|i| tower.generator(i)).collect();
    let small_ints: Vec<i64> = ints.iter().copied().take(5).collect();
    let mut power = 1usize;
    while out.len() < limit && power <= 2 + limit / 4 {
        for g in &gens {
            let gp = g.pow(power as i64).unwrap();
            for &c in &small_ints {
                if c == 0 {
                    continue;
                }
                for &d in &small_ints {
                    let e = gp.mul(&tower.from_i64(c)).add(&tower.from_i64(d));
                    push(e, &mut out);
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        power += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_and_deterministic() {
        let k = FieldTower::prime(3).unwrap().extend_transcendental("s").unwrap();
        let a = small_elements(&k, 30);
        let b = small_elements(&k, 30);
        assert_eq!(a.len(), 30);
        assert_eq!(a, b);
        for (i, x) in a.iter().enumerate() {
            for y in &a[i + 1..] {
                assert_ne!(x, y);
            }
        }
    }
}
