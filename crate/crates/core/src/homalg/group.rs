//! Finitely generated abelian groups in invariant-factor normal form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::HomalgError;

/// `Z^rank + Z/q_1 + ... + Z/q_k` with `q_1 | q_2 | ... | q_k`, each `q_i >= 2`.
///
/// The normal form is unique, so derived equality is group isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbGroup {
    rank: usize,
    torsion: Vec<u64>,
}

/// Coefficient groups share the representation of [`AbGroup`].
pub type CoeffGroup = AbGroup;

impl AbGroup {
    pub fn zero() -> Self {
        Self { rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(0, &[BigInt::from(n)])
    }

    /// Validated constructor for a group already in normal form.
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self, HomalgError> {
        if torsion.iter().any(|&q| q < 2) {
            return Err(HomalgError::InvalidGroup(format!("torsion orders must be >= 2, got {torsion:?}")));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(HomalgError::InvalidGroup(format!("torsion orders {torsion:?} do not form a divisibility chain")));
        }
        Ok(Self { rank, torsion })
    }

    /// Normal form of `Z^free + sum_i Z/orders[i]`, where an order of zero
    /// contributes a copy of `Z` and an order of one nothing.
    pub fn from_cyclic_orders(free: usize, orders: &[BigInt]) -> Self {
        let mut rank = free;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.magnitude();
            if o.is_zero() {
                rank += 1;
            } else if *o != 1u32.into() {
                finite.push(BigInt::from(o.clone()));
            }
        }
        if finite.is_empty() {
            return Self { rank, torsion: Vec::new() };
        }
        let m = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let torsion = smith_normal_form(&m)
            .diagonal()
            .into_iter()
            .filter(|d| *d != BigInt::from(1))
            .map(|d| d.to_u64().expect("invariant factor exceeds u64"))
            .collect();
        Self { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Cyclic orders of the normal form; `0` stands for `Z`.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        std::iter::repeat(0).take(self.rank).chain(self.torsion.iter().copied()).collect()
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).map(|&q| BigInt::from(q)).collect();
        Self::from_cyclic_orders(self.rank + other.rank, &orders)
    }

    pub fn power(&self, n: usize) -> AbGroup {
        (0..n).fold(AbGroup::zero(), |acc, _| acc.direct_sum(self))
    }

    pub fn tensor(&self, other: &AbGroup) -> AbGroup {
        let free = self.rank * other.rank;
        let mut orders = Vec::new();
        for &q in &other.torsion {
            orders.extend(std::iter::repeat(BigInt::from(q)).take(self.rank));
        }
        for &t in &self.torsion {
            orders.extend(std::iter::repeat(BigInt::from(t)).take(other.rank));
            for &q in &other.torsion {
                orders.push(BigInt::from(t.gcd(&q)));
            }
        }
        Self::from_cyclic_orders(free, &orders)
    }

    pub fn tor(&self, other: &AbGroup) -> AbGroup {
        let orders: Vec<BigInt> = self
            .torsion
            .iter()
            .flat_map(|&t| other.torsion.iter().map(move |&q| BigInt::from(t.gcd(&q))))
            .collect();
        Self::from_cyclic_orders(0, &orders)
    }

    /// Every element as a coordinate vector, for finite groups.
    pub fn elements(&self) -> Option<Vec<Vec<u64>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &q in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..q).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Some(out)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z/{q}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for AbGroup {
    type Err = HomalgError;

    /// Parses sums of `0`, `Z`, `Z^n` and `Z/n`, e.g. `"Z+Z/2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HomalgError::ParseGroup(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in compact.split('+') {
            if term == "0" {
                continue;
            }
            let rest = term.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                free += 1;
            } else if let Some(n) = rest.strip_prefix('^') {
                free += n.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(n) = rest.strip_prefix('/') {
                let n: u64 = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                orders.push(BigInt::from(n));
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_cyclic_orders(free, &orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn normal_form_merges_coprime_orders() {
        assert_eq!(g("Z/2+Z/3"), g("Z/6"));
        assert_eq!(g("Z/2+Z/4").torsion(), &[2, 4]);
        assert_eq!(g("Z/6+Z/4").torsion(), &[2, 12]);
    }

    #[test]
    fn render_and_parse_round_trip() {
        for s in ["0", "Z", "Z^2 + Z/2 + Z/6", "Z/3"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("Z + Z/2").to_string(), "Z + Z/2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "Q", "Z/0", "Z/x", "Z^", "ZZ"] {
            assert!(s.parse::<AbGroup>().is_err(), "{s}");
        }
    }

    #[test]
    fn tensor_and_tor() {
        assert_eq!(g("Z^2").tensor(&g("Z/2")), g("Z/2+Z/2"));
        assert_eq!(g("Z/4").tensor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z/3").tensor(&g("Z/2")), g("0"));
        assert_eq!(g("Z/4+Z").tor(&g("Z/6+Z")), g("Z/2"));
        assert_eq!(g("Z").tor(&g("Z/2")), AbGroup::zero());
    }

    #[test]
    fn new_validates() {
        assert!(AbGroup::new(0, vec![2, 3]).is_err());
        assert!(AbGroup::new(0, vec![1]).is_err());
        assert!(AbGroup::new(1, vec![2, 4]).is_ok());
    }

    #[test]
    fn finite_elements() {
        assert_eq!(g("Z/2+Z/2").elements().unwrap().len(), 4);
        assert!(g("Z").elements().is_none());
        assert_eq!(AbGroup::zero().elements().unwrap(), vec![Vec::<u64>::new()]);
    }
}
