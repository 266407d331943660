//! Restriction sets `R ⊆ ℕ` represented by their maximal intervals.
//!
//! A restriction set is stored as an ordered list of disjoint, non-adjacent
//! closed intervals `[lo, hi]` of positive integers; the last interval may be
//! unbounded. The text grammar is `item (',' item)*` with
//! `item = INT | INT-INT | INT-`, so `"1,2,4-6"` is `{1,2} ∪ {4,5,6}` and
//! `"1-"` is all of ℕ. Parsing canonicalizes: `"2,1,3"` becomes `[1,3]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One maximal interval of a restriction set. `hi == None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Interval {
    fn contains(&self, n: u64) -> bool {
        n >= self.lo && self.hi.map_or(true, |hi| n <= hi)
    }
}

/// A subset of ℕ given as sorted, disjoint, non-adjacent maximal intervals.
///
/// Immutable after construction; membership is decidable for every `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionSet {
    intervals: Vec<Interval>,
}

/// The endpoint sets `a(R)` and `b(R)` of the maximal-interval decomposition:
/// left endpoints except `1`, and finite right endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointSets {
    pub a_set: BTreeSet<u64>,
    pub b_set: BTreeSet<u64>,
}

impl RestrictionSet {
    /// Builds a set from arbitrary (possibly overlapping, unsorted) intervals,
    /// merging them into the canonical maximal decomposition.
    pub fn from_intervals(raw: impl IntoIterator<Item = Interval>) -> Result<Self> {
        let mut items: Vec<Interval> = Vec::new();
        for iv in raw {
            if iv.lo < 1 {
                return Err(Error::Parse("interval endpoints must be ≥ 1".into()));
            }
            if let Some(hi) = iv.hi {
                if iv.lo > hi {
                    return Err(Error::Parse(format!(
                        "interval {}-{} has lo > hi",
                        iv.lo, hi
                    )));
                }
            }
            items.push(iv);
        }
        if items.is_empty() {
            return Err(Error::Parse("empty restriction set".into()));
        }
        items.sort_by_key(|iv| iv.lo);
        let mut merged: Vec<Interval> = Vec::new();
        for iv in items {
            match merged.last_mut() {
                // Merge when overlapping or adjacent (prev.hi + 1 >= iv.lo).
                Some(prev) => match prev.hi {
                    None => {}
                    Some(phi) if phi + 1 >= iv.lo => {
                        prev.hi = match iv.hi {
                            None => None,
                            Some(hi) => Some(phi.max(hi)),
                        };
                    }
                    _ => merged.push(iv),
                },
                None => merged.push(iv),
            }
        }
        Ok(RestrictionSet { intervals: merged })
    }

    /// The whole of ℕ, i.e. `[1, ∞)`.
    pub fn all() -> Self {
        RestrictionSet {
            intervals: vec![Interval { lo: 1, hi: None }],
        }
    }

    /// The set `{1, …, r}`.
    pub fn up_to(r: u64) -> Self {
        RestrictionSet::from_intervals([Interval {
            lo: 1,
            hi: Some(r),
        }])
        .expect("1..=r is a valid interval")
    }

    /// Builds a finite set from explicit members.
    pub fn from_members(members: impl IntoIterator<Item = u64>) -> Result<Self> {
        RestrictionSet::from_intervals(
            members
                .into_iter()
                .map(|m| Interval { lo: m, hi: Some(m) }),
        )
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < 1 {
            return false;
        }
        // Intervals are sorted; a binary search would also do, but sets here
        // have very few intervals.
        self.intervals.iter().any(|iv| iv.contains(n))
    }

    pub fn is_cofinite(&self) -> bool {
        self.intervals.last().map_or(false, |iv| iv.hi.is_none())
    }

    /// Largest finite element, or `None` when the set is cofinite.
    pub fn max_finite(&self) -> Option<u64> {
        self.intervals.last().and_then(|iv| iv.hi)
    }

    /// Members of the set that are ≤ `limit`, ascending.
    pub fn members_up_to(&self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        for iv in &self.intervals {
            let hi = iv.hi.map_or(limit, |h| h.min(limit));
            if iv.lo > hi {
                continue;
            }
            out.extend(iv.lo..=hi);
        }
        out
    }

    /// True iff (1 ∈ R ⇒ 2 ∈ R) and every odd `n ≥ 3` in R has both
    /// `n − 1` and `n + 1` in R.
    pub fn has_no_exposed_odds(&self) -> bool {
        if self.contains(1) && !self.contains(2) {
            return false;
        }
        for iv in &self.intervals {
            let hi = match iv.hi {
                // An unbounded interval contains n−1 and n+1 for every odd
                // n ≥ lo + 1; only the left edge can expose an odd number.
                None => iv.lo + 1,
                Some(hi) => hi,
            };
            let mut n = if iv.lo % 2 == 1 { iv.lo } else { iv.lo + 1 };
            while n <= hi {
                if n >= 3 && (!self.contains(n - 1) || !self.contains(n + 1)) {
                    return false;
                }
                n += 2;
            }
        }
        true
    }

    /// The endpoint sets of the maximal-interval decomposition. A singleton
    /// interval contributes to both `a(R)` and `b(R)`.
    pub fn endpoints(&self) -> EndpointSets {
        let mut a_set = BTreeSet::new();
        let mut b_set = BTreeSet::new();
        for iv in &self.intervals {
            if iv.lo != 1 {
                a_set.insert(iv.lo);
            }
            if let Some(hi) = iv.hi {
                b_set.insert(hi);
            }
        }
        EndpointSets { a_set, b_set }
    }

    /// Membership view of `R(d) = {d(n−1)+1 : n ∈ R}`.
    pub fn stretch(&self, d: u64) -> Stretched<'_> {
        assert!(d >= 1, "stretch factor must be ≥ 1");
        Stretched { base: self, d }
    }
}

/// The image of a restriction set under `s_d(n) = d(n−1)+1`, as a
/// membership/preimage view. `s_1` is the identity, so `stretch(R, 1)`
/// behaves exactly like `R`.
#[derive(Clone, Copy, Debug)]
pub struct Stretched<'a> {
    base: &'a RestrictionSet,
    d: u64,
}

impl Stretched<'_> {
    pub fn d(&self) -> u64 {
        self.d
    }

    /// The `n` with `s_d(n) = m`, if `m` lies on the progression
    /// `{1, d+1, 2d+1, …}`; membership in the image additionally requires
    /// `n ∈ R`.
    pub fn preimage(&self, m: u64) -> Option<u64> {
        if m < 1 || (m - 1) % self.d != 0 {
            return None;
        }
        Some((m - 1) / self.d + 1)
    }

    /// The `n ∈ R` with `s_d(n) = m`, i.e. the preimage within the image set.
    pub fn preimage_in_set(&self, m: u64) -> Option<u64> {
        self.preimage(m).filter(|&n| self.base.contains(n))
    }

    pub fn contains(&self, m: u64) -> bool {
        self.preimage_in_set(m).is_some()
    }

    /// `s_d(n)` itself.
    pub fn image(&self, n: u64) -> u64 {
        self.d * (n - 1) + 1
    }

    /// Members of the image set that are ≤ `limit`, ascending.
    pub fn members_up_to(&self, limit: u64) -> Vec<u64> {
        if limit < 1 {
            return Vec::new();
        }
        let n_max = (limit - 1) / self.d + 1;
        self.base
            .members_up_to(n_max)
            .into_iter()
            .map(|n| self.image(n))
            .collect()
    }
}

impl fmt::Display for RestrictionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for iv in &self.intervals {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            match iv.hi {
                Some(hi) if hi == iv.lo => write!(f, "{}", iv.lo)?,
                Some(hi) => write!(f, "{}-{}", iv.lo, hi)?,
                None => write!(f, "{}-", iv.lo)?,
            }
        }
        Ok(())
    }
}

impl FromStr for RestrictionSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut intervals = Vec::new();
        for item in text.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::Parse(format!("empty item in \"{text}\"")));
            }
            let iv = match item.split_once('-') {
                None => {
                    let n = parse_int(item)?;
                    Interval { lo: n, hi: Some(n) }
                }
                Some((lo, "")) => Interval {
                    lo: parse_int(lo)?,
                    hi: None,
                },
                Some((lo, hi)) => Interval {
                    lo: parse_int(lo)?,
                    hi: Some(parse_int(hi)?),
                },
            };
            intervals.push(iv);
        }
        RestrictionSet::from_intervals(intervals)
    }
}

fn parse_int(text: &str) -> Result<u64> {
    let n: u64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("\"{text}\" is not a positive integer")))?;
    if n < 1 {
        return Err(Error::Parse("integers in a restriction set must be ≥ 1".into()));
    }
    Ok(n)
}

/// Convenience used throughout tests and the CLI.
pub fn parse_restriction(text: &str) -> Result<RestrictionSet> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> RestrictionSet {
        parse_restriction(text).unwrap()
    }

    #[test]
    fn parses_and_canonicalizes() {
        assert_eq!(r("1,2,4-6").to_string(), "1-2,4-6");
        assert_eq!(r("1-").to_string(), "1-");
        assert_eq!(r("2,1,3").to_string(), "1-3");
        assert_eq!(r("4-,6").to_string(), "4-");
        assert_eq!(r("3-5,1,6").to_string(), "1,3-6");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_restriction("").is_err());
        assert!(parse_restriction("0").is_err());
        assert!(parse_restriction("5-3").is_err());
        assert!(parse_restriction("1,,3").is_err());
        assert!(parse_restriction("x").is_err());
    }

    #[test]
    fn membership_matches_intervals() {
        let s = r("1-2,4-6");
        let members: Vec<u64> = (1..=8).filter(|&n| s.contains(n)).collect();
        assert_eq!(members, vec![1, 2, 4, 5, 6]);
        assert!(r("3-").contains(1_000_000));
        assert!(!r("3-").contains(2));
    }

    #[test]
    fn round_trips_canonical_text() {
        for text in ["1-2,4-6", "1-", "2", "1,4-", "2-4,7-9,12"] {
            assert_eq!(r(text).to_string(), text);
        }
    }

    #[test]
    fn no_exposed_odds() {
        assert!(r("1,2,4,5,6").has_no_exposed_odds());
        assert!(!r("1,3").has_no_exposed_odds());
        assert!(r("1-").has_no_exposed_odds());
        // 1 ∈ R without 2 is exposed.
        assert!(!r("1").has_no_exposed_odds());
        // Odd left edge of a cofinite tail is exposed.
        assert!(!r("5-").has_no_exposed_odds());
        assert!(r("4-").has_no_exposed_odds());
        assert!(r("2,3,4").has_no_exposed_odds());
    }

    #[test]
    fn endpoint_sets() {
        let e = r("1,2,4-6").endpoints();
        assert_eq!(e.a_set.iter().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(e.b_set.iter().copied().collect::<Vec<_>>(), vec![2, 6]);

        let e = RestrictionSet::all().endpoints();
        assert!(e.a_set.is_empty());
        assert!(e.b_set.is_empty());

        // A singleton interval lands in both sets.
        let e = r("1,2,4").endpoints();
        assert_eq!(e.a_set.iter().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(e.b_set.iter().copied().collect::<Vec<_>>(), vec![2, 4]);
    }

    #[test]
    fn endpoints_of_no_exposed_odds_sets_are_even() {
        for text in ["1,2,4,5,6", "1-", "2-4", "4-", "1-4,6-8,10-"] {
            let s = r(text);
            assert!(s.has_no_exposed_odds(), "{text}");
            let e = s.endpoints();
            for v in e.a_set.iter().chain(e.b_set.iter()) {
                assert_eq!(v % 2, 0, "odd endpoint {v} in {text}");
            }
        }
    }

    #[test]
    fn stretching() {
        let s = r("1,2");
        let st = s.stretch(3);
        let members: Vec<u64> = (1..=10).filter(|&m| st.contains(m)).collect();
        assert_eq!(members, vec![1, 4]);

        let all = RestrictionSet::all();
        let st = all.stretch(2);
        let members: Vec<u64> = (1..=9).filter(|&m| st.contains(m)).collect();
        assert_eq!(members, vec![1, 3, 5, 7, 9]);

        // Preimage queries: on the progression vs. within the image set.
        let st = r("1,2").stretch(3);
        assert_eq!(st.preimage(7), Some(3));
        assert_eq!(st.preimage_in_set(7), None);
        assert_eq!(st.preimage_in_set(4), Some(2));
        assert_eq!(st.preimage(5), None);

        // s_1 is the identity.
        let s = r("2-4,7");
        let st = s.stretch(1);
        for m in 1..=10 {
            assert_eq!(st.contains(m), s.contains(m));
            if s.contains(m) {
                assert_eq!(st.preimage(m), Some(m));
            }
        }
    }

    #[test]
    fn stretch_agrees_with_direct_image() {
        let pool = ["1,2", "1-3", "2,5-7", "1,4-", "3-"];
        for text in pool {
            let s = r(text);
            for d in 1..=5u64 {
                let st = s.stretch(d);
                let direct: BTreeSet<u64> = s
                    .members_up_to(200)
                    .into_iter()
                    .map(|n| d * (n - 1) + 1)
                    .filter(|&m| m <= 200)
                    .collect();
                for m in 1..=200 {
                    assert_eq!(st.contains(m), direct.contains(&m), "R={text} d={d} m={m}");
                }
                assert_eq!(st.members_up_to(200), direct.into_iter().collect::<Vec<_>>());
            }
        }
    }
}
