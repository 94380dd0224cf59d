//! The independence and auxiliary axioms as executable checkers.
//!
//! Each checker walks the `(≿, ≿')` pairs its axiom quantifies over, in a
//! fixed order, and stops at the first violation. A failing verdict carries a
//! [`Witness`] that [`Witness::confirms`] can re-check from scratch.

mod checks;
pub mod transform;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use checks::{
    check, check_ibs, check_iic, check_inui, check_iws, check_nt, check_si, check_ssi, check_to,
    check_top_si, check_wivip,
};

use crate::enumerate::DEFAULT_MAX_DOMAIN;
use crate::error::Error;
use crate::order::{PairRelation, Permutation, PowerRanking, SocialRanking, Universe};
use crate::srs::Srs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    #[serde(rename = "NT")]
    Nt,
    #[serde(rename = "WIVIP")]
    Wivip,
    #[serde(rename = "IWS")]
    Iws,
    #[serde(rename = "IBS")]
    Ibs,
    #[serde(rename = "TO")]
    To,
    #[serde(rename = "SI")]
    Si,
    #[serde(rename = "SSI")]
    Ssi,
    #[serde(rename = "INUI")]
    Inui,
    #[serde(rename = "IIC")]
    Iic,
    #[serde(rename = "Top-SI")]
    TopSi,
}

impl Axiom {
    /// The nine table columns, in order.
    pub const TABLE: [Axiom; 9] = [
        Axiom::Nt,
        Axiom::Wivip,
        Axiom::Iws,
        Axiom::Ibs,
        Axiom::To,
        Axiom::Si,
        Axiom::Ssi,
        Axiom::Inui,
        Axiom::Iic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Nt => "NT",
            Axiom::Wivip => "WIVIP",
            Axiom::Iws => "IWS",
            Axiom::Ibs => "IBS",
            Axiom::To => "TO",
            Axiom::Si => "SI",
            Axiom::Ssi => "SSI",
            Axiom::Inui => "INUI",
            Axiom::Iic => "IIC",
            Axiom::TopSi => "Top-SI",
        }
    }

    /// Axioms whose per-order fan-out is ordered-Bell or power-set sized; at
    /// `n >= 3` their base orders are subject to [`Budget::max_orders`].
    pub fn is_fan_out(self) -> bool {
        matches!(
            self,
            Axiom::Iws | Axiom::Ibs | Axiom::Si | Axiom::Ssi | Axiom::TopSi
        )
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "nt" => Axiom::Nt,
            "wivip" => Axiom::Wivip,
            "iws" => Axiom::Iws,
            "ibs" => Axiom::Ibs,
            "to" => Axiom::To,
            "si" => Axiom::Si,
            "ssi" => Axiom::Ssi,
            "inui" => Axiom::Inui,
            "iic" => Axiom::Iic,
            "top-si" | "topsi" => Axiom::TopSi,
            _ => return Err(Error::UnknownAxiom(s.to_string())),
        })
    }
}

/// How much of the quantifier range a verdict covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceMode {
    /// Every quantified instance was examined.
    Exhaustive,
    /// A seeded sample of base orders; "holds" means no violation was found.
    Sampled,
    /// Decided by a stored counterexample.
    Registry,
}

impl fmt::Display for EvidenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvidenceMode::Exhaustive => "exhaustive",
            EvidenceMode::Sampled => "sampled",
            EvidenceMode::Registry => "registry",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
}

/// Limits on how much of the space a checker may walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Most base orders a fan-out axiom may examine before sampling kicks in.
    pub max_orders: usize,
    /// Whether to sample when `max_orders` is exceeded (otherwise error).
    pub sampling: bool,
    pub seed: u64,
    /// Largest enumeration domain `2^n` allowed at all.
    pub max_domain: usize,
}

impl Budget {
    pub const DEFAULT_MAX_ORDERS: usize = 4000;
    pub const DEFAULT_SEED: u64 = 20_250_601;

    /// Exhaustive everywhere the domain limit allows.
    pub fn unlimited() -> Self {
        Budget {
            max_orders: usize::MAX,
            ..Budget::default()
        }
    }

    pub fn with_max_orders(mut self, max_orders: usize) -> Self {
        self.max_orders = max_orders;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_orders: Self::DEFAULT_MAX_ORDERS,
            sampling: true,
            seed: Self::DEFAULT_SEED,
            max_domain: DEFAULT_MAX_DOMAIN,
        }
    }
}

/// A concrete violation: the input(s), the pair involved, and the outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub before: PowerRanking,
    /// `≿'` (or `≿_π` for NT). Absent for WIVIP.
    pub after: Option<PowerRanking>,
    pub permutation: Option<Permutation>,
    pub pair: Option<(usize, usize)>,
    pub before_output: SocialRanking,
    pub after_output: Option<SocialRanking>,
}

impl Witness {
    pub fn universe(&self) -> Universe {
        self.before.universe()
    }

    pub fn before_relation(&self) -> Option<PairRelation> {
        self.pair.map(|(x, y)| self.before_output.pair(x, y))
    }

    pub fn after_relation(&self) -> Option<PairRelation> {
        let (x, y) = self.pair?;
        let out = self.after_output.as_ref()?;
        Some(match &self.permutation {
            Some(pi) => out.pair(pi.apply(x), pi.apply(y)),
            None => out.pair(x, y),
        })
    }

    /// Re-derives everything from the rule: the pair is in the axiom's scope,
    /// the stored outputs are what `srs` produces, and they violate the axiom.
    pub fn confirms(&self, axiom: Axiom, srs: &Srs) -> bool {
        use transform::*;

        if !srs.fits(self.universe()) || srs.rank(&self.before) != self.before_output {
            return false;
        }
        let out = &self.before_output;
        if axiom == Axiom::Wivip {
            return match self.pair {
                Some((x, y)) => {
                    is_wivip_instance(&self.before, (x, y)) && !out.strictly_above(x, y)
                }
                None => false,
            };
        }
        let (Some(after), Some(after_out)) = (&self.after, &self.after_output) else {
            return false;
        };
        if srs.rank(after) != *after_out {
            return false;
        }
        if axiom == Axiom::To {
            return same_top(&self.before, after) && out != after_out;
        }
        let Some((x, y)) = self.pair else {
            return false;
        };
        match axiom {
            Axiom::Nt => match &self.permutation {
                Some(pi) => {
                    is_permuted(&self.before, after, pi)
                        && out.weakly_above(x, y)
                            != after_out.weakly_above(pi.apply(x), pi.apply(y))
                }
                None => false,
            },
            Axiom::Iws => {
                is_worst_decomposition(&self.before, after)
                    && out.strictly_above(x, y)
                    && !after_out.strictly_above(x, y)
            }
            Axiom::Ibs => {
                is_best_decomposition(&self.before, after)
                    && out.strictly_above(x, y)
                    && !after_out.strictly_above(x, y)
            }
            Axiom::Si | Axiom::Ssi | Axiom::TopSi => {
                let strong = axiom == Axiom::Ssi;
                let top_only = axiom == Axiom::TopSi;
                is_slide(&self.before, after, (x, y), strong, top_only)
                    && out.pair(x, y) != after_out.pair(x, y)
            }
            Axiom::Inui => {
                is_lift(&self.before, after, (x, y)) && out.pair(x, y) != after_out.pair(x, y)
            }
            Axiom::Iic => {
                cp_signature(&self.before, x, y) == cp_signature(after, x, y)
                    && out.pair(x, y) != after_out.pair(x, y)
            }
            Axiom::Wivip | Axiom::To => unreachable!(),
        }
    }
}

/// The result of checking one axiom against one rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub srs: Srs,
    pub mode: EvidenceMode,
    pub outcome: Outcome,
    /// Universe the evidence lives in.
    pub universe: Universe,
    /// Number of quantified instances examined.
    pub instances: u64,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.outcome, self.mode) {
            (Outcome::Holds, EvidenceMode::Sampled) => "no violation found",
            (Outcome::Holds, _) => "holds",
            (Outcome::Fails, _) => "fails",
        };
        write!(
            f,
            "{} {}: {} ({}, n={}, {} instances)",
            self.srs.label(),
            self.axiom,
            status,
            self.mode,
            self.universe.n(),
            self.instances
        )
    }
}
