//! Congruence subgroups, their indices and Sturm precisions.

use std::fmt;
use std::str::FromStr;

use modring_core::characters::euler_phi;
use modring_core::{HalfWeight, UnitGroup};

use crate::error::{CatalogError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Full,
    Gamma0,
    /// `Gamma(N, G)`: lower-right entry reduced mod `N` lies in `<G>`.
    GammaH(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub level: u64,
    pub kind: GroupKind,
    pub half_integral: bool,
}

impl GroupSpec {
    pub fn full() -> Self {
        GroupSpec { level: 1, kind: GroupKind::Full, half_integral: false }
    }

    pub fn gamma0(level: u64) -> Self {
        GroupSpec { level, kind: GroupKind::Gamma0, half_integral: false }
    }

    pub fn gamma_h(level: u64, gens: Vec<u64>) -> Result<Self> {
        let g = UnitGroup::new(level);
        if let Some(&bad) = gens.iter().find(|&&x| !g.is_unit(x as i64)) {
            return Err(CatalogError::Invalid(format!("{bad} is not a unit mod {level}")));
        }
        let mut gens: Vec<u64> = gens.iter().map(|&x| x % level.max(1)).collect();
        gens.sort_unstable();
        gens.dedup();
        Ok(GroupSpec { level, kind: GroupKind::GammaH(gens), half_integral: false })
    }

    pub fn half(mut self) -> Result<Self> {
        if self.level % 4 != 0 {
            return Err(CatalogError::Invalid(format!("half-integral weight needs 4 | N, got N = {}", self.level)));
        }
        self.half_integral = true;
        Ok(self)
    }

    /// The same group with integral weights only.
    pub fn integral_part(&self) -> GroupSpec {
        GroupSpec { half_integral: false, ..self.clone() }
    }

    /// The subgroup `<G, -1>` of `(Z/N)^x`, as a sorted list of residues.
    fn subgroup_with_minus_one(&self, gens: &[u64]) -> Vec<u64> {
        let n = self.level;
        if n <= 2 {
            return vec![n - 1];
        }
        let mut elems = vec![1u64];
        let mut frontier = vec![1u64];
        let mut all_gens = gens.to_vec();
        all_gens.push(n - 1);
        while let Some(x) = frontier.pop() {
            for &g in &all_gens {
                let y = x * g % n;
                if !elems.contains(&y) {
                    elems.push(y);
                    frontier.push(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// Index of the image of the group in `PSL_2(Z)`.
    pub fn index(&self) -> u64 {
        let psi = psi(self.level);
        match &self.kind {
            GroupKind::Full => 1,
            GroupKind::Gamma0 => psi,
            GroupKind::GammaH(gens) => psi * euler_phi(self.level) / self.subgroup_with_minus_one(gens).len() as u64,
        }
    }

    /// Coefficient count beyond which two weight-`k` forms agreeing there are equal.
    pub fn sturm_prec(&self, weight: HalfWeight) -> usize {
        let index = self.index() as usize;
        let doubled = weight.doubled() as usize;
        if weight.is_integral() {
            doubled / 2 * index / 12 + 2
        } else {
            (doubled * index / 12 + 2).div_ceil(2)
        }
    }

    /// Sturm precision of the square, used for half-integral relations.
    pub fn sturm_prec_squared(&self, weight: HalfWeight) -> usize {
        let doubled = weight.doubled() as usize;
        doubled * self.index() as usize / 12 + 2
    }
}

pub fn psi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            result = result / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m + 1);
    }
    result
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Full => write!(f, "full")?,
            GroupKind::Gamma0 => write!(f, "gamma0:{}", self.level)?,
            GroupKind::GammaH(gens) => {
                let g: Vec<String> = gens.iter().map(|x| x.to_string()).collect();
                write!(f, "gammaH:{}:[{}]", self.level, g.join(","))?
            }
        }
        if self.half_integral {
            write!(f, ":half")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = CatalogError;

    /// Accepts `full`, `gamma0:N`, `gammaH:N:[g,...]`, each optionally followed by `:half`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| CatalogError::parse(format!("group {s:?}"), m);
        let s = s.trim();
        let (body, half) = match s.strip_suffix(":half") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let group = if body == "full" {
            GroupSpec::full()
        } else if let Some(n) = body.strip_prefix("gamma0:") {
            let n: u64 = n.parse().map_err(|_| bad("bad level"))?;
            if n == 0 {
                return Err(bad("level must be positive"));
            }
            GroupSpec::gamma0(n)
        } else if let Some(rest) = body.strip_prefix("gammaH:") {
            let (n, gens) = rest.split_once(':').ok_or_else(|| bad("expected gammaH:N:[g,...]"))?;
            let n: u64 = n.parse().map_err(|_| bad("bad level"))?;
            if n == 0 {
                return Err(bad("level must be positive"));
            }
            let inner = gens
                .strip_prefix('[')
                .and_then(|g| g.strip_suffix(']'))
                .ok_or_else(|| bad("generator list must be bracketed"))?;
            let gens = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u64>().map_err(|_| bad("bad generator")))
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::gamma_h(n, gens)?
        } else {
            return Err(bad("unknown group kind"));
        };
        if half {
            group.half()
        } else {
            Ok(group)
        }
    }
}
