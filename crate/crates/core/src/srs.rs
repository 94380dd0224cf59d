//! Social ranking solutions: maps from a weak order on coalitions to a weak
//! order on individuals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::order::{PowerRanking, SocialRanking, Universe};

/// `θ(x)`: how many coalitions of each class contain `x`, best class first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaVector(Vec<u32>);

impl ThetaVector {
    pub fn new(counts: Vec<u32>) -> Self {
        ThetaVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn theta(ranking: &PowerRanking, x: usize) -> ThetaVector {
    ThetaVector(
        ranking
            .classes()
            .iter()
            .map(|class| class.count_containing(x))
            .collect(),
    )
}

/// `≥L`: the first differing component decides, larger is better.
pub fn lex_compare(a: &ThetaVector, b: &ThetaVector) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(first_difference(a.0.iter().zip(&b.0)))
}

/// `≥DL`: the last differing component decides, smaller is better.
pub fn dual_lex_compare(a: &ThetaVector, b: &ThetaVector) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(first_difference(a.0.iter().zip(&b.0).rev()).reverse())
}

fn first_difference<'a>(mut pairs: impl Iterator<Item = (&'a u32, &'a u32)>) -> Ordering {
    pairs
        .find(|(x, y)| x != y)
        .map_or(Ordering::Equal, |(x, y)| x.cmp(y))
}

/// `e(x)`: the length of the longest prefix `Σ1 ∪ .. ∪ Σk` whose every
/// coalition contains `x`, or 0 when `x` misses a coalition of `Σ1`.
pub fn excellence_depth(ranking: &PowerRanking, x: usize) -> usize {
    ranking
        .classes()
        .iter()
        .take_while(|class| class.all_contain(x))
        .count()
}

/// `s(z) = Σ_{S ∈ Σ1, z ∈ S} 1/|S|`, exact.
pub type SplitScore = Ratio<u64>;

pub fn split_score(ranking: &PowerRanking, z: usize) -> SplitScore {
    ranking
        .best()
        .members_containing(z)
        .iter()
        .map(|s| Ratio::new(1, s.len() as u64))
        .sum()
}

/// A strict priority over individuals, best first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TieBreakOrder {
    priority: Vec<usize>,
    /// `position[x]` is `x`'s place in `priority`.
    position: Vec<usize>,
}

impl TieBreakOrder {
    pub fn new(priority: Vec<usize>) -> Result<Self> {
        let n = priority.len();
        let mut position = vec![usize::MAX; n];
        for (i, &x) in priority.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(Error::Permutation(n));
            }
            position[x] = i;
        }
        Ok(TieBreakOrder { priority, position })
    }

    /// `0 ▷ 1 ▷ .. ▷ n-1`.
    pub fn natural(n: usize) -> Self {
        TieBreakOrder {
            priority: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn len(&self) -> usize {
        self.priority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priority.is_empty()
    }

    /// `x ▷ y`.
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }
}

/// Parses `3>2>1` (1-indexed).
impl FromStr for TieBreakOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse {
            line: 1,
            column: 1,
            message,
        };
        let priority = s
            .split('>')
            .map(|part| {
                let part = part.trim();
                match part.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(bad(format!("`{part}` is not an individual"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        TieBreakOrder::new(priority).map_err(|_| bad(format!("`{s}` is not a linear order")))
    }
}

impl fmt::Display for TieBreakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.priority.iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join(">"))
    }
}

fn thetas(ranking: &PowerRanking) -> Vec<ThetaVector> {
    ranking
        .universe()
        .individuals()
        .map(|x| theta(ranking, x))
        .collect()
}

/// `R^L`.
pub fn lex_cel(ranking: &PowerRanking) -> SocialRanking {
    let th = thetas(ranking);
    SocialRanking::from_comparator(ranking.universe(), |a, b| {
        lex_compare(&th[a], &th[b]).expect("same source ranking")
    })
}

/// `R^DL`.
pub fn dual_lex_cel(ranking: &PowerRanking) -> SocialRanking {
    let th = thetas(ranking);
    SocialRanking::from_comparator(ranking.universe(), |a, b| {
        dual_lex_compare(&th[a], &th[b]).expect("same source ranking")
    })
}

/// `R^P`: first θ component only.
pub fn plurality(ranking: &PowerRanking) -> SocialRanking {
    let top = ranking.best();
    SocialRanking::from_scores(ranking.universe(), |x| top.count_containing(x))
}

/// `R^IIS`: by excellence depth.
pub fn iis(ranking: &PowerRanking) -> SocialRanking {
    SocialRanking::from_scores(ranking.universe(), |x| excellence_depth(ranking, x))
}

/// `R^constX`: everyone tied.
pub fn const_x(ranking: &PowerRanking) -> SocialRanking {
    SocialRanking::indifferent(ranking.universe())
}

/// `R^splitP`.
pub fn split_plurality(ranking: &PowerRanking) -> SocialRanking {
    SocialRanking::from_scores(ranking.universe(), |z| split_score(ranking, z))
}

/// `R^{P,▷}`: plurality with ties broken by `order`. Always linear.
pub fn plurality_tiebreak(ranking: &PowerRanking, order: &TieBreakOrder) -> SocialRanking {
    assert_eq!(
        order.len(),
        ranking.universe().n(),
        "tie-break order must cover X"
    );
    let top = ranking.best();
    SocialRanking::from_comparator(ranking.universe(), |a, b| {
        top.count_containing(a)
            .cmp(&top.count_containing(b))
            .then_with(|| order.position[b].cmp(&order.position[a]))
    })
}

/// One of the seven solutions, as a value that can be passed to checkers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Srs {
    Iis,
    LexCel,
    Plurality,
    DualLexCel,
    ConstX,
    SplitPlurality,
    /// `None` breaks ties by `1 ▷ 2 ▷ .. ▷ n` for whatever `n` the input has.
    PluralityTieBreak(Option<TieBreakOrder>),
}

impl Srs {
    /// The seven rules in table order.
    pub fn roster() -> Vec<Srs> {
        vec![
            Srs::Iis,
            Srs::LexCel,
            Srs::Plurality,
            Srs::DualLexCel,
            Srs::ConstX,
            Srs::SplitPlurality,
            Srs::PluralityTieBreak(None),
        ]
    }

    pub fn rank(&self, ranking: &PowerRanking) -> SocialRanking {
        match self {
            Srs::Iis => iis(ranking),
            Srs::LexCel => lex_cel(ranking),
            Srs::Plurality => plurality(ranking),
            Srs::DualLexCel => dual_lex_cel(ranking),
            Srs::ConstX => const_x(ranking),
            Srs::SplitPlurality => split_plurality(ranking),
            Srs::PluralityTieBreak(Some(order)) => plurality_tiebreak(ranking, order),
            Srs::PluralityTieBreak(None) => {
                plurality_tiebreak(ranking, &TieBreakOrder::natural(ranking.universe().n()))
            }
        }
    }

    /// Command-line name.
    pub fn cli_name(&self) -> &'static str {
        match self {
            Srs::Iis => "iis",
            Srs::LexCel => "lexcel",
            Srs::Plurality => "plurality",
            Srs::DualLexCel => "dual-lexcel",
            Srs::ConstX => "const",
            Srs::SplitPlurality => "split-plurality",
            Srs::PluralityTieBreak(_) => "plurality-tb",
        }
    }

    /// Table label.
    pub fn label(&self) -> &'static str {
        match self {
            Srs::Iis => "R^IIS",
            Srs::LexCel => "R^L",
            Srs::Plurality => "R^P",
            Srs::DualLexCel => "R^DL",
            Srs::ConstX => "R^constX",
            Srs::SplitPlurality => "R^splitP",
            Srs::PluralityTieBreak(_) => "R^{P,tb}",
        }
    }

    /// Looks up a rule by command-line name, attaching `tiebreak` to `plurality-tb`.
    pub fn from_name(name: &str, tiebreak: Option<TieBreakOrder>) -> Result<Srs> {
        Ok(match name {
            "iis" => Srs::Iis,
            "lexcel" => Srs::LexCel,
            "plurality" => Srs::Plurality,
            "dual-lexcel" => Srs::DualLexCel,
            "const" => Srs::ConstX,
            "split-plurality" => Srs::SplitPlurality,
            "plurality-tb" => Srs::PluralityTieBreak(tiebreak),
            other => return Err(Error::UnknownRule(other.to_string())),
        })
    }

    /// Whether the rule can be applied to rankings over `universe`.
    pub fn fits(&self, universe: Universe) -> bool {
        match self {
            Srs::PluralityTieBreak(Some(order)) => order.len() == universe.n(),
            _ => true,
        }
    }
}

impl fmt::Display for Srs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{make_power_ranking, Coalition, Family};

    fn c(members: &[usize]) -> Coalition {
        members.iter().copied().collect()
    }

    fn fam(cs: &[&[usize]]) -> Family {
        cs.iter().map(|m| c(m)).collect()
    }

    fn example() -> PowerRanking {
        let u = Universe::new(3).unwrap();
        make_power_ranking(
            u,
            &[
                vec![c(&[0]), c(&[2]), c(&[0, 1])],
                vec![c(&[1])],
                vec![c(&[0, 2]), c(&[1, 2]), c(&[0, 1, 2]), c(&[])],
            ],
        )
        .unwrap()
    }

    fn tv(v: &[u32]) -> ThetaVector {
        ThetaVector::new(v.to_vec())
    }

    #[test]
    fn theta_on_the_example() {
        let r = example();
        assert_eq!(theta(&r, 0), tv(&[2, 0, 2]));
        assert_eq!(theta(&r, 1), tv(&[1, 1, 2]));
        assert_eq!(theta(&r, 2), tv(&[1, 0, 3]));
    }

    #[test]
    fn theta_single_class() {
        let u = Universe::new(2).unwrap();
        assert_eq!(theta(&PowerRanking::indifferent(u), 0), tv(&[2]));
    }

    #[test]
    fn lex_comparisons() {
        assert_eq!(
            lex_compare(&tv(&[2, 0, 2]), &tv(&[1, 1, 2])),
            Ok(Ordering::Greater)
        );
        assert_eq!(
            lex_compare(&tv(&[1, 1, 2]), &tv(&[1, 0, 3])),
            Ok(Ordering::Greater)
        );
        assert_eq!(lex_compare(&tv(&[0, 0]), &tv(&[0, 0])), Ok(Ordering::Equal));
        assert_eq!(
            lex_compare(&tv(&[0]), &tv(&[0, 0])),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn dual_lex_comparisons() {
        assert_eq!(
            dual_lex_compare(&tv(&[2, 0, 2]), &tv(&[1, 0, 3])),
            Ok(Ordering::Greater)
        );
        assert_eq!(
            dual_lex_compare(&tv(&[1, 1]), &tv(&[1, 1])),
            Ok(Ordering::Equal)
        );
        assert_eq!(
            dual_lex_compare(&tv(&[0, 2]), &tv(&[1, 1])),
            Ok(Ordering::Less)
        );
        assert!(dual_lex_compare(&tv(&[1]), &tv(&[])).is_err());
    }

    #[test]
    fn excellence_depths() {
        let r = example();
        for x in 0..3 {
            assert_eq!(excellence_depth(&r, x), 0);
        }
        let u = Universe::new(2).unwrap();
        let r = PowerRanking::with_rest(u, &[fam(&[&[0, 1]]), fam(&[&[0]])]).unwrap();
        assert_eq!(excellence_depth(&r, 0), 2);
        assert_eq!(excellence_depth(&r, 1), 1);
        let r = PowerRanking::with_rest(u, &[fam(&[&[], &[0, 1]])]).unwrap();
        assert_eq!(excellence_depth(&r, 0), 0);
        assert_eq!(excellence_depth(&r, 1), 0);
    }

    #[test]
    fn three_rules_on_the_example() {
        let r = example();
        assert_eq!(lex_cel(&r).to_string(), "1 > 2 > 3");
        assert_eq!(plurality(&r).to_string(), "1 > 2 ~ 3");
        assert_eq!(iis(&r).to_string(), "1 ~ 2 ~ 3");
        assert_eq!(dual_lex_cel(&r).to_string(), "1 > 2 > 3");
        assert_eq!(const_x(&r).to_string(), "1 ~ 2 ~ 3");
    }

    #[test]
    fn single_class_gives_total_indifference() {
        let u = Universe::new(3).unwrap();
        let r = PowerRanking::indifferent(u);
        for srs in Srs::roster().iter().take(6) {
            assert_eq!(srs.rank(&r).classes().len(), 1, "{srs}");
        }
    }

    #[test]
    fn two_individuals_singleton_top() {
        let u = Universe::new(2).unwrap();
        let r = PowerRanking::with_rest(u, &[fam(&[&[0]])]).unwrap();
        assert_eq!(theta(&r, 0), tv(&[1, 1]));
        assert_eq!(theta(&r, 1), tv(&[0, 2]));
        assert_eq!(lex_cel(&r).to_string(), "1 > 2");
        assert_eq!(dual_lex_cel(&r).to_string(), "1 > 2");
        let r = PowerRanking::with_rest(u, &[fam(&[&[0, 1]]), fam(&[&[0]])]).unwrap();
        assert_eq!(iis(&r).to_string(), "1 > 2");
    }

    #[test]
    fn split_scores() {
        let u = Universe::new(3).unwrap();
        let r = PowerRanking::with_rest(u, &[fam(&[&[0, 1, 2], &[0], &[1, 2]])]).unwrap();
        assert_eq!(split_score(&r, 0), Ratio::new(4, 3));
        assert_eq!(split_score(&r, 1), Ratio::new(5, 6));
        assert!(split_plurality(&r).strictly_above(0, 1));

        let r = PowerRanking::with_rest(u, &[fam(&[&[0, 1, 2]])]).unwrap();
        assert_eq!(split_score(&r, 2), Ratio::new(1, 3));
        assert_eq!(split_plurality(&r).classes().len(), 1);

        let r = PowerRanking::with_rest(u, &[fam(&[&[]])]).unwrap();
        assert_eq!(split_score(&r, 0), Ratio::new(0, 1));
        assert_eq!(split_plurality(&r).classes().len(), 1);
    }

    #[test]
    fn tie_breaking() {
        let r = example();
        let order: TieBreakOrder = "3>2>1".parse().unwrap();
        assert_eq!(plurality_tiebreak(&r, &order).to_string(), "1 > 3 > 2");
        let u = Universe::new(3).unwrap();
        let flat = PowerRanking::indifferent(u);
        let natural = TieBreakOrder::natural(3);
        assert_eq!(plurality_tiebreak(&flat, &natural).to_string(), "1 > 2 > 3");
        let strict = PowerRanking::with_rest(u, &[fam(&[&[0], &[0, 1], &[0, 1, 2]])]).unwrap();
        assert_eq!(plurality(&strict), plurality_tiebreak(&strict, &natural));
    }

    #[test]
    fn tiebreak_parsing() {
        assert!("3>1>2".parse::<TieBreakOrder>().is_ok());
        assert!("3>2".parse::<TieBreakOrder>().is_err());
        assert!("1>1".parse::<TieBreakOrder>().is_err());
        assert!("0>1".parse::<TieBreakOrder>().is_err());
        assert!("a".parse::<TieBreakOrder>().is_err());
        assert_eq!("2 > 1".parse::<TieBreakOrder>().unwrap().to_string(), "2>1");
    }

    #[test]
    fn names_round_trip() {
        for srs in Srs::roster() {
            assert_eq!(Srs::from_name(srs.cli_name(), None).unwrap(), srs);
        }
        assert_eq!(
            Srs::from_name("borda", None),
            Err(Error::UnknownRule("borda".into()))
        );
    }
}
