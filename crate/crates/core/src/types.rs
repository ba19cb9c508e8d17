//! Subgroup type records and the conversion between the two parametrisations.
//!
//! A finite-index subgroup of C2 * Cq is a free product of λ copies of C2,
//! μ copies of Cq and a free group of rank ν. Its permutation representation
//! on the cosets has x with m1 two-cycles and y with m2 q-cycles.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KurType {
    pub lambda: u64,
    pub mu: u64,
    pub nu: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepType {
    pub m1: u64,
    pub m2: u64,
}

impl fmt::Display for KurType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.lambda, self.mu, self.nu)
    }
}

impl KurType {
    /// Index forced by the type, if the index relation admits one.
    pub fn index(&self, q: u64) -> Option<u64> {
        let lhs = q * self.lambda + 2 * (q - 1) * self.mu + 2 * q * self.nu;
        let lhs = lhs.checked_sub(2 * q)?;
        (lhs % (q - 2) == 0).then_some(lhs / (q - 2))
    }

    /// qλ + 2(q−1)μ + 2q(ν−1) = (q−2)n
    pub fn satisfies_index_relation(&self, q: u64, n: u64) -> bool {
        let lhs = (q * self.lambda + 2 * (q - 1) * self.mu + 2 * q * self.nu) as i128 - 2 * q as i128;
        lhs == ((q - 2) * n) as i128
    }
}

/// (m1, m2) -> (n − 2m1, n − q·m2, m1 + (q−1)m2 − n + 1); None if a component is negative.
pub fn kurosh_type(q: u64, n: u64, rep: RepType) -> Option<KurType> {
    let lambda = n.checked_sub(2 * rep.m1)?;
    let mu = n.checked_sub(q * rep.m2)?;
    let nu = (rep.m1 + (q - 1) * rep.m2 + 1).checked_sub(n)?;
    Some(KurType { lambda, mu, nu })
}

pub fn rep_type(q: u64, n: u64, t: KurType) -> Option<RepType> {
    let two_m1 = n.checked_sub(t.lambda)?;
    let q_m2 = n.checked_sub(t.mu)?;
    if two_m1 % 2 != 0 || q_m2 % q != 0 {
        return None;
    }
    let rep = RepType { m1: two_m1 / 2, m2: q_m2 / q };
    (kurosh_type(q, n, rep) == Some(t)).then_some(rep)
}

/// Every representation type at index n whose Kurosh type is non-negative.
pub fn feasible_reps(q: u64, n: u64) -> Vec<RepType> {
    let mut out = Vec::new();
    for m2 in 0..=n / q {
        for m1 in 0..=n / 2 {
            let rep = RepType { m1, m2 };
            if kurosh_type(q, n, rep).is_some() {
                out.push(rep);
            }
        }
    }
    out
}

/// Subgroup counts at one index, keyed by Kurosh type. Zero counts are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub q: u64,
    pub n: u64,
    pub counts: BTreeMap<KurType, Nat>,
}

impl TypeCensus {
    pub fn total(&self) -> Nat {
        self.counts.values().sum()
    }

    pub fn get(&self, t: KurType) -> Nat {
        self.counts.get(&t).cloned().unwrap_or_default()
    }

    /// Sum of counts over types satisfying `keep`.
    pub fn total_where(&self, keep: impl Fn(&KurType) -> bool) -> Nat {
        self.counts.iter().filter(|(t, _)| keep(t)).map(|(_, c)| c).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn whole_group_and_index_two() {
        let t = kurosh_type(3, 1, RepType { m1: 0, m2: 0 }).unwrap();
        assert_eq!(t, KurType { lambda: 1, mu: 1, nu: 0 });
        let t = kurosh_type(3, 2, RepType { m1: 1, m2: 0 }).unwrap();
        assert_eq!(t, KurType { lambda: 0, mu: 2, nu: 0 });
        assert_eq!(t.index(3), Some(2));
    }

    proptest! {
        #[test]
        fn types_round_trip_and_obey_index_relation(qi in 0usize..4, n in 1u64..60, m1 in 0u64..30, m2 in 0u64..20) {
            let q = [3u64, 5, 7, 11][qi];
            let rep = RepType { m1, m2 };
            if let Some(t) = kurosh_type(q, n, rep) {
                prop_assert!(t.satisfies_index_relation(q, n));
                prop_assert_eq!(t.index(q), Some(n));
                prop_assert_eq!(rep_type(q, n, t), Some(rep));
            }
        }
    }
}
