//! The unit group `(Z/rZ)^*` and its subgroups.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{gcd, mul_mod, powmod};

pub fn unit_group(r: u64) -> Vec<u64> {
    (1..r.max(2)).filter(|&a| gcd(a, r) == 1).collect()
}

/// `<a>` in `(Z/rZ)^*`, sorted.
pub fn cyclic_subgroup(a: u64, r: u64) -> Vec<u64> {
    let mut out = vec![1 % r];
    let mut x = a % r;
    while x != 1 % r {
        out.push(x);
        x = mul_mod(x, a, r);
    }
    out.sort_unstable();
    out
}

/// Whether a sorted list of units is closed under multiplication mod `r`.
pub fn is_subgroup(set: &[u64], r: u64) -> bool {
    if set.binary_search(&(1 % r)).is_err() {
        return false;
    }
    set.iter().all(|&a| {
        set.iter().all(|&b| set.binary_search(&mul_mod(a, b, r)).is_ok())
    })
}

/// Subgroup generated by `base` and `x`, as a sorted list.
fn extend(base: &[u64], x: u64, r: u64) -> Vec<u64> {
    let mut seen: BTreeSet<u64> = base.iter().copied().collect();
    let mut power = x % r;
    while !base.contains(&power) {
        for &h in base {
            seen.insert(mul_mod(h, power, r));
        }
        power = mul_mod(power, x, r);
    }
    seen.into_iter().collect()
}

type SubgroupTable = RwLock<HashMap<(u64, u64), Arc<Vec<Vec<u64>>>>>;

fn subgroup_cache() -> &'static SubgroupTable {
    static CACHE: OnceLock<SubgroupTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All subgroups of order `e`, each sorted, listed in lexicographic order.
///
/// Every such subgroup sits inside the `e`-torsion `{x : x^e = 1}`; when the
/// torsion itself has order `e` it is the only one. Otherwise the subgroups of
/// the torsion are enumerated by adjoining one generator at a time.
pub fn subgroups_of_order(r: u64, e: u64) -> Arc<Vec<Vec<u64>>> {
    if let Some(hit) = subgroup_cache().read().unwrap().get(&(r, e)) {
        return Arc::clone(hit);
    }
    let torsion: Vec<u64> = unit_group(r)
        .into_iter()
        .filter(|&a| powmod(a, e, r) == 1 % r)
        .collect();
    let mut found: Vec<Vec<u64>> = if torsion.len() as u64 == e {
        vec![torsion]
    } else if !(torsion.len() as u64).is_multiple_of(e) {
        Vec::new()
    } else {
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let trivial = vec![1 % r];
        let mut stack = vec![trivial.clone()];
        seen.insert(trivial);
        while let Some(h) = stack.pop() {
            for &x in &torsion {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let g = extend(&h, x, r);
                if e.is_multiple_of(g.len() as u64) && seen.insert(g.clone()) {
                    stack.push(g);
                }
            }
        }
        seen.into_iter().filter(|g| g.len() as u64 == e).collect()
    };
    found.sort();
    let out = Arc::new(found);
    subgroup_cache()
        .write()
        .unwrap()
        .entry((r, e))
        .or_insert_with(|| Arc::clone(&out));
    out
}

/// Smallest `k >= 1` with `a^k` in the subgroup `k_set` (sorted).
pub fn order_modulo_subgroup(a: u64, r: u64, k_set: &[u64]) -> u64 {
    let mut x = a % r;
    let mut k = 1;
    while k_set.binary_search(&x).is_err() {
        x = mul_mod(x, a, r);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_case() {
        assert_eq!(*subgroups_of_order(5, 2), vec![vec![1, 4]]);
        assert_eq!(*subgroups_of_order(13, 3), vec![vec![1, 3, 9]]);
        assert_eq!(*subgroups_of_order(13, 4), vec![vec![1, 5, 8, 12]]);
        assert!(subgroups_of_order(13, 5).is_empty());
    }

    #[test]
    fn klein_four() {
        // (Z/8Z)^* = {1,3,5,7} has three subgroups of order 2
        assert_eq!(*subgroups_of_order(8, 2), vec![vec![1, 3], vec![1, 5], vec![1, 7]]);
        // (Z/15Z)^* = C2 x C4
        let subs = subgroups_of_order(15, 2);
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| is_subgroup(s, 15)));
    }

    #[test]
    fn counts_match_brute_force() {
        // brute force: every subset closed under multiplication (small groups only)
        for r in [7u64, 8, 12, 15, 16, 20, 21, 24] {
            let units = unit_group(r);
            let n = units.len();
            let mut all: Vec<Vec<u64>> = Vec::new();
            for mask in 1u32..(1 << n) {
                let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| units[i]).collect();
                if is_subgroup(&set, r) {
                    all.push(set);
                }
            }
            for e in 1..=n as u64 {
                let mut expect: Vec<Vec<u64>> =
                    all.iter().filter(|s| s.len() as u64 == e).cloned().collect();
                expect.sort();
                assert_eq!(*subgroups_of_order(r, e), expect, "r={r} e={e}");
            }
        }
    }

    #[test]
    fn orders_mod_subgroup() {
        assert_eq!(order_modulo_subgroup(19, 5, &[1, 4]), 1);
        assert_eq!(order_modulo_subgroup(7, 5, &[1, 4]), 2);
        assert_eq!(cyclic_subgroup(5, 8), vec![1, 5]);
    }
}
