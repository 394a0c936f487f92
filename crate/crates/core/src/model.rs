//! Ranked lists, element weights, and the completion of partial lists into
//! a pair of permutations over the same universe.
//!
//! Ranks are 1-based everywhere in the public surface: the element at
//! position `p` of a list has rank `p + 1`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Key in a weight file that overrides the default weight.
pub const DEFAULT_WEIGHT_KEY: &str = "__default__";

/// On-disk encoding of a ranked list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListFormat {
    /// One token per line, LF or CRLF. Trailing blank lines are ignored.
    Plain,
    /// A flat JSON array of strings.
    Json,
}

impl ListFormat {
    /// Picks [`ListFormat::Json`] when the first non-whitespace byte is `[`.
    pub fn detect(text: &str) -> Self {
        if text.trim_start().starts_with('[') {
            ListFormat::Json
        } else {
            ListFormat::Plain
        }
    }
}

/// An ordered sequence of distinct tokens. Tokens compare by exact bytes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct RankedList {
    elements: Vec<String>,
}

impl RankedList {
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(elements.len());
        for token in &elements {
            if !seen.insert(token.as_str()) {
                return Err(Error::DuplicateToken(token.clone()));
            }
        }
        Ok(RankedList { elements })
    }

    /// Parses a list document in the given format.
    pub fn parse(text: &str, format: ListFormat) -> Result<Self> {
        match format {
            ListFormat::Plain => parse_plain(text),
            ListFormat::Json => {
                let tokens: Vec<String> = serde_json::from_str(text)?;
                RankedList::new(tokens)
            }
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    /// 1-based rank of `token`, if present.
    pub fn rank_of(&self, token: &str) -> Option<usize> {
        self.elements.iter().position(|t| t == token).map(|p| p + 1)
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.elements
            .iter()
            .enumerate()
            .map(|(p, t)| (t.as_str(), p))
            .collect()
    }
}

fn parse_plain(text: &str) -> Result<RankedList> {
    let mut lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    if let Some(p) = lines.iter().position(|l| l.is_empty()) {
        return Err(Error::EmptyToken { line: p + 1 });
    }
    RankedList::new(lines)
}

/// Convenience wrapper around [`RankedList::parse`].
pub fn parse_ranked_list(text: &str, format: ListFormat) -> Result<RankedList> {
    RankedList::parse(text, format)
}

/// Per-token positive weights with a default for tokens not listed.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    entries: HashMap<String, f64>,
    default_weight: f64,
}

impl Default for WeightTable {
    fn default() -> Self {
        WeightTable::unit()
    }
}

fn check_weight(token: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveWeight {
            token: token.to_string(),
            value,
        })
    }
}

impl WeightTable {
    /// Every token weighs 1.
    pub fn unit() -> Self {
        WeightTable {
            entries: HashMap::new(),
            default_weight: 1.0,
        }
    }

    pub fn with_default(default_weight: f64) -> Result<Self> {
        Ok(WeightTable {
            entries: HashMap::new(),
            default_weight: check_weight(DEFAULT_WEIGHT_KEY, default_weight)?,
        })
    }

    pub fn insert(&mut self, token: impl Into<String>, weight: f64) -> Result<()> {
        let token = token.into();
        let weight = check_weight(&token, weight)?;
        self.entries.insert(token, weight);
        Ok(())
    }

    /// Builds a table from `(token, weight)` pairs with default weight 1.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut table = WeightTable::unit();
        for (token, weight) in pairs {
            table.insert(token, weight)?;
        }
        Ok(table)
    }

    /// Parses a JSON object `{token: number}`. The key `"__default__"`
    /// sets the default weight.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let object = value
            .as_object()
            .ok_or_else(|| Error::InvalidWeights("expected a JSON object".into()))?;
        let mut table = WeightTable::unit();
        for (token, raw) in object {
            let weight = raw.as_f64().ok_or_else(|| {
                Error::InvalidWeights(format!("weight for {token:?} is not a number"))
            })?;
            if token == DEFAULT_WEIGHT_KEY {
                table.default_weight = check_weight(token, weight)?;
            } else {
                table.insert(token.clone(), weight)?;
            }
        }
        Ok(table)
    }

    pub fn get(&self, token: &str) -> f64 {
        self.entries
            .get(token)
            .copied()
            .unwrap_or(self.default_weight)
    }

    pub fn default_weight(&self) -> f64 {
        self.default_weight
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Completes two partial lists into permutations of their union.
///
/// Each output keeps its source list as a prefix and appends the tokens it
/// is missing in the order they appear in the other list.
pub fn complete_pair(a: &RankedList, b: &RankedList) -> Result<(RankedList, RankedList)> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::EmptyUnion);
    }
    Ok((append_missing(a, b), append_missing(b, a)))
}

fn append_missing(base: &RankedList, other: &RankedList) -> RankedList {
    let present: HashSet<&str> = base.iter().collect();
    let mut elements = base.elements.clone();
    elements.extend(
        other
            .iter()
            .filter(|t| !present.contains(t))
            .map(str::to_string),
    );
    RankedList { elements }
}

/// Two permutations of one universe, relabelled by the reference list.
///
/// `universe[i]` is the element with reference rank `i + 1` and
/// `pi_ranks[i]` is that element's rank in the other list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignedPair {
    universe: Vec<String>,
    pi_ranks: Vec<usize>,
}

impl AlignedPair {
    /// Builds a pair directly from a rank vector; the universe tokens are
    /// the reference ranks `"1"..="n"`.
    pub fn from_ranks(pi_ranks: Vec<usize>) -> Result<Self> {
        check_permutation(&pi_ranks)?;
        let universe = (1..=pi_ranks.len()).map(|i| i.to_string()).collect();
        Ok(AlignedPair { universe, pi_ranks })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn pi_ranks(&self) -> &[usize] {
        &self.pi_ranks
    }

    pub fn len(&self) -> usize {
        self.pi_ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi_ranks.is_empty()
    }

    /// Weights of the universe in reference order.
    pub fn weights(&self, table: &WeightTable) -> Vec<f64> {
        self.universe.iter().map(|t| table.get(t)).collect()
    }

    /// The other list written as reference ranks in its own order, i.e. the
    /// inverse of `pi_ranks`. Entry `k` is the reference rank of the element
    /// at position `k + 1` of the other list.
    pub fn positions(&self) -> Vec<usize> {
        invert(&self.pi_ranks)
    }

    /// The same two lists with the roles of reference and comparand swapped.
    pub fn swapped(&self) -> AlignedPair {
        let positions = self.positions();
        let universe = positions
            .iter()
            .map(|&r| self.universe[r - 1].clone())
            .collect();
        AlignedPair {
            universe,
            pi_ranks: positions,
        }
    }
}

/// Relabels `b` by the ranks of `a`. Both must be permutations of each other.
pub fn align(a: &RankedList, b: &RankedList) -> Result<AlignedPair> {
    if a.len() != b.len() {
        return Err(Error::NotPermutations);
    }
    let in_b = b.index();
    let pi_ranks = a
        .iter()
        .map(|t| in_b.get(t).map(|p| p + 1).ok_or(Error::NotPermutations))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlignedPair {
        universe: a.elements.clone(),
        pi_ranks,
    })
}

/// Completes then aligns two possibly partial lists.
pub fn complete_and_align(a: &RankedList, b: &RankedList) -> Result<AlignedPair> {
    let (a, b) = complete_pair(a, b)?;
    align(&a, &b)
}

pub(crate) fn check_permutation(ranks: &[usize]) -> Result<()> {
    let n = ranks.len();
    let mut seen = vec![false; n];
    for &r in ranks {
        if r == 0 || r > n {
            return Err(Error::InvalidRanks(format!("rank {r} outside 1..={n}")));
        }
        if std::mem::replace(&mut seen[r - 1], true) {
            return Err(Error::InvalidRanks(format!("rank {r} repeated")));
        }
    }
    Ok(())
}

/// Inverse of a 1-based permutation.
pub fn invert(ranks: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; ranks.len()];
    for (i, &r) in ranks.iter().enumerate() {
        inverse[r - 1] = i + 1;
    }
    inverse
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(tokens: &[&str]) -> RankedList {
        RankedList::new(tokens.iter().copied()).unwrap()
    }

    #[test]
    fn parse_plain_list() {
        let l = parse_ranked_list("a\nb\nc", ListFormat::Plain).unwrap();
        assert_eq!(l, list(&["a", "b", "c"]));
        let l = parse_ranked_list("a\r\nb\r\nc\r\n\r\n\n", ListFormat::Plain).unwrap();
        assert_eq!(l, list(&["a", "b", "c"]));
        assert!(parse_ranked_list("", ListFormat::Plain).unwrap().is_empty());
    }

    #[test]
    fn parse_json_list() {
        let l = parse_ranked_list(r#"["b","d","c","e"]"#, ListFormat::Json).unwrap();
        assert_eq!(l, list(&["b", "d", "c", "e"]));
    }

    #[test]
    fn parse_rejects_duplicates() {
        match parse_ranked_list("a\na", ListFormat::Plain) {
            Err(Error::DuplicateToken(t)) => assert_eq!(t, "a"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ranked_list(r#"["x","x"]"#, ListFormat::Json),
            Err(Error::DuplicateToken(_))
        ));
    }

    #[test]
    fn parse_rejects_malformed_json() {
        for text in [r#"["a","#, r#"{"a":1}"#, "[1,2]", r#"[["a"]]"#] {
            assert!(matches!(
                parse_ranked_list(text, ListFormat::Json),
                Err(Error::MalformedJson(_))
            ));
        }
    }

    #[test]
    fn parse_rejects_interior_blank_line() {
        assert!(matches!(
            parse_ranked_list("a\n\nb", ListFormat::Plain),
            Err(Error::EmptyToken { line: 2 })
        ));
    }

    #[test]
    fn tokens_are_exact_bytes() {
        let l = parse_ranked_list("A\na\n a", ListFormat::Plain).unwrap();
        assert_eq!(l.len(), 3);
    }

    #[test]
    fn detect_format() {
        assert_eq!(ListFormat::detect("  \n[\"a\"]"), ListFormat::Json);
        assert_eq!(ListFormat::detect("a\nb"), ListFormat::Plain);
    }

    #[test]
    fn completion_example() {
        let (a, b) = complete_pair(&list(&["a", "b", "c"]), &list(&["b", "d", "c", "e"])).unwrap();
        assert_eq!(a, list(&["a", "b", "c", "d", "e"]));
        assert_eq!(b, list(&["b", "d", "c", "e", "a"]));
    }

    #[test]
    fn completion_of_full_lists_is_identity() {
        let a = list(&["a", "b", "c", "d", "e"]);
        let b = list(&["e", "d", "c", "b", "a"]);
        let (a2, b2) = complete_pair(&a, &b).unwrap();
        assert_eq!((a2, b2), (a, b));
    }

    #[test]
    fn completion_disjoint_singletons() {
        let (a, b) = complete_pair(&list(&["x"]), &list(&["y"])).unwrap();
        assert_eq!(a, list(&["x", "y"]));
        assert_eq!(b, list(&["y", "x"]));
        assert_eq!(a.rank_of("x"), Some(1));
        assert_eq!(b.rank_of("y"), Some(1));
    }

    #[test]
    fn completion_empty_cases() {
        let empty = RankedList::default();
        assert!(matches!(
            complete_pair(&empty, &empty),
            Err(Error::EmptyUnion)
        ));
        let (a, b) = complete_pair(&empty, &list(&["p", "q"])).unwrap();
        assert_eq!(a, list(&["p", "q"]));
        assert_eq!(b, list(&["p", "q"]));
    }

    #[test]
    fn align_examples() {
        let s = list(&["a", "b", "c", "d", "e", "f"]);
        let p = list(&["b", "f", "a", "e", "d", "c"]);
        let pair = align(&s, &p).unwrap();
        assert_eq!(pair.pi_ranks(), &[3, 1, 6, 5, 4, 2]);
        // The other list spelled in reference ranks.
        assert_eq!(pair.positions(), vec![2, 6, 1, 5, 4, 3]);

        let s = list(&["a", "b", "c", "d", "e"]);
        let p = list(&["b", "d", "c", "e", "a"]);
        let pair = align(&s, &p).unwrap();
        assert_eq!(pair.pi_ranks(), &[5, 1, 3, 2, 4]);
        assert_eq!(pair.positions(), vec![2, 4, 3, 5, 1]);

        assert_eq!(align(&s, &s).unwrap().pi_ranks(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn align_rejects_non_permutations() {
        let a = list(&["a", "b"]);
        assert!(matches!(
            align(&a, &list(&["a"])),
            Err(Error::NotPermutations)
        ));
        assert!(matches!(
            align(&a, &list(&["a", "c"])),
            Err(Error::NotPermutations)
        ));
    }

    #[test]
    fn swapped_is_inverse() {
        let pair = AlignedPair::from_ranks(vec![3, 1, 6, 5, 4, 2]).unwrap();
        let back = pair.swapped();
        assert_eq!(back.pi_ranks(), &[2, 6, 1, 5, 4, 3]);
        assert_eq!(back.swapped(), pair);
    }

    #[test]
    fn from_ranks_validates() {
        assert!(AlignedPair::from_ranks(vec![1, 1]).is_err());
        assert!(AlignedPair::from_ranks(vec![0, 1]).is_err());
        assert!(AlignedPair::from_ranks(vec![2, 3]).is_err());
        assert!(AlignedPair::from_ranks(vec![]).unwrap().is_empty());
    }

    #[test]
    fn weight_table_json() {
        let w = WeightTable::from_json(r#"{"a": 2, "b": 0.5, "__default__": 3}"#).unwrap();
        assert_eq!(w.get("a"), 2.0);
        assert_eq!(w.get("b"), 0.5);
        assert_eq!(w.get("zzz"), 3.0);
        assert_eq!(WeightTable::from_json("{}").unwrap().get("q"), 1.0);
    }

    #[test]
    fn weight_table_rejects_bad_values() {
        assert!(matches!(
            WeightTable::from_json(r#"{"a": -1}"#),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            WeightTable::from_json(r#"{"a": 0}"#),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            WeightTable::from_json(r#"{"__default__": 0}"#),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            WeightTable::from_json(r#"{"a": "x"}"#),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(
            WeightTable::from_json("[1]"),
            Err(Error::InvalidWeights(_))
        ));
        assert!(WeightTable::unit().insert("a", f64::NAN).is_err());
    }
}
