//! η-sequences (quiddity sequences) and the rules that generate them.
//!
//! A sequence `(c0, ..., c_{n-1})` of positive integers is an η-sequence
//! exactly when `U^{c0} S U^{c1} S ··· U^{c_{n-1}} S = -I`. That product is
//! the validity test used throughout the crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sl2::{Mat2, SUWord};

/// A validated η-sequence of length at least 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaSeq(Vec<u64>);

impl EtaSeq {
    /// Validates `entries` with [`is_eta`].
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if is_eta(&entries)? {
            Ok(EtaSeq(entries))
        } else {
            Err(Error::NotQuiddity(format_sequence(&entries)))
        }
    }

    /// For sequences produced by a construction that is valid by itself.
    pub(crate) fn trusted(entries: Vec<u64>) -> Self {
        debug_assert!(is_eta(&entries).unwrap_or(false), "{entries:?}");
        EtaSeq(entries)
    }

    /// `(1, 1, 1)`.
    pub fn base() -> Self {
        EtaSeq(vec![1, 1, 1])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cyclic shift: entry `k` moves to the front. Negative `k` shifts right.
    pub fn rotate(&self, k: isize) -> Self {
        EtaSeq(rotated(&self.0, k))
    }

    pub fn reverse(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        EtaSeq(v)
    }

    /// Inserts a 1 in the cyclic gap between positions `i` and `i + 1` and
    /// increments both neighbours.
    ///
    /// At `i = 0` this is `(c0+1, 1, c1+1, c2, ...)`; other gaps are the same
    /// rule applied to a rotation. The new entry sits at `i + 1`.
    pub fn expand(&self, i: usize) -> Result<Self> {
        let n = self.len();
        if i >= n {
            return Err(Error::InvalidInput(format!(
                "expansion gap {i} out of range for length {n}"
            )));
        }
        let mut v = self.0.clone();
        v[i] += 1;
        v[(i + 1) % n] += 1;
        v.insert(i + 1, 1);
        Ok(EtaSeq::trusted(v))
    }

    /// Removes the entry 1 at position `i` and decrements its two neighbours.
    pub fn contract(&self, i: usize) -> Result<Self> {
        let n = self.len();
        let fail = |reason: &str| {
            Err(Error::ContractionImpossible {
                position: i,
                reason: reason.to_string(),
            })
        };
        if i >= n {
            return fail("position out of range");
        }
        if n <= 3 {
            return fail("a sequence of length 3 has nothing to remove");
        }
        if self.0[i] != 1 {
            return fail("entry is not 1");
        }
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        if self.0[prev] < 2 || self.0[next] < 2 {
            return fail("a neighbour is smaller than 2");
        }
        let mut v = self.0.clone();
        v[prev] -= 1;
        v[next] -= 1;
        v.remove(i);
        Ok(EtaSeq::trusted(v))
    }

    /// Positions contracted, in order, to reach `(1, 1, 1)`.
    pub fn reduction_path(&self) -> Vec<usize> {
        let mut cur = self.clone();
        let mut path = Vec::with_capacity(self.len().saturating_sub(3));
        while cur.len() > 3 {
            let i = cur
                .0
                .iter()
                .position(|&c| c == 1)
                .expect("η-sequences longer than 3 contain a 1");
            cur = cur.contract(i).expect("every 1 of an η-sequence is an ear");
            path.push(i);
        }
        path
    }

    pub fn word(&self) -> SUWord {
        SUWord::from_sequence(&self.0)
    }
}

impl fmt::Display for EtaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sequence(&self.0))
    }
}

impl FromStr for EtaSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EtaSeq::new(parse_sequence(s)?)
    }
}

impl AsRef<[u64]> for EtaSeq {
    fn as_ref(&self) -> &[u64] {
        &self.0
    }
}

pub(crate) fn rotated<T: Clone>(v: &[T], k: isize) -> Vec<T> {
    let mut out = v.to_vec();
    if !out.is_empty() {
        let n = out.len() as isize;
        out.rotate_left(k.rem_euclid(n) as usize);
    }
    out
}

/// Checks the shape requirements shared by all sequence operations.
pub fn check_candidate(s: &[u64]) -> Result<()> {
    if s.len() < 3 {
        return Err(Error::TooShort(s.len()));
    }
    if let Some(position) = s.iter().position(|&c| c == 0) {
        return Err(Error::NonPositiveEntry { position, value: 0 });
    }
    Ok(())
}

/// Whether `s` is an η-sequence, decided by `U^{c0}S···U^{c_{n-1}}S = -I`.
pub fn is_eta(s: &[u64]) -> Result<bool> {
    check_candidate(s)?;
    Ok(word_is_minus_identity(s))
}

/// Evaluates the word with `i128` entries and redoes it with arbitrary
/// precision if any product overflows.
fn word_is_minus_identity(s: &[u64]) -> bool {
    match small_word_product(s) {
        Some(m) => m == [-1, 0, 0, -1],
        None => SUWord::from_sequence(s).eval().is_minus_identity(),
    }
}

fn small_word_product(s: &[u64]) -> Option<[i128; 4]> {
    let [mut a, mut b, mut c, mut d] = [1i128, 0, 0, 1];
    for &k in s {
        let k = i128::from(k);
        // (M · U^k) · S with U^k S = [[0, 1], [-1, k]]
        let na = b.checked_neg()?;
        let nb = a.checked_add(b.checked_mul(k)?)?;
        let nc = d.checked_neg()?;
        let nd = c.checked_add(d.checked_mul(k)?)?;
        (a, b, c, d) = (na, nb, nc, nd);
    }
    Some([a, b, c, d])
}

/// The matrix `U^{c0} S ··· U^{c_{n-1}} S` for an arbitrary sequence.
pub fn sequence_matrix(s: &[u64]) -> Mat2 {
    SUWord::from_sequence(s).eval()
}

/// Parses comma-separated positive integers such as `2,1,3,1,2`.
pub fn parse_sequence(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(text);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .enumerate()
        .map(|(position, tok)| {
            let tok = tok.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("{tok:?} is not an integer")))?;
            if v < 1 {
                return Err(Error::NonPositiveEntry { position, value: v });
            }
            Ok(v as u64)
        })
        .collect()
}

pub fn format_sequence(s: &[u64]) -> String {
    s.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta(v: &[u64]) -> EtaSeq {
        EtaSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(is_eta(&[1, 1, 1]).unwrap());
        assert!(is_eta(&[2, 1, 3, 1, 2]).unwrap());
        assert!(!is_eta(&[2, 2, 2]).unwrap());
        assert!(!is_eta(&[2, 1, 2, 1, 2, 1]).unwrap());
    }

    #[test]
    fn invalid_inputs_are_errors() {
        assert_eq!(is_eta(&[1, 1]), Err(Error::TooShort(2)));
        assert!(matches!(
            is_eta(&[1, 0, 1]),
            Err(Error::NonPositiveEntry { position: 1, .. })
        ));
        assert!(parse_sequence("1,-2,3").is_err());
        assert!(parse_sequence("1,a").is_err());
    }

    #[test]
    fn overflowing_products_fall_back_to_big_integers() {
        let big = vec![u64::MAX / 2; 6];
        assert!(!is_eta(&big).unwrap());
    }

    #[test]
    fn rotate_and_reverse() {
        assert_eq!(eta(&[2, 1, 2, 1]).rotate(1), eta(&[1, 2, 1, 2]));
        let s = eta(&[1, 3, 2, 1, 5, 1, 2, 3]);
        assert_eq!(s.rotate(1), eta(&[3, 2, 1, 5, 1, 2, 3, 1]));
        assert_eq!(s.rotate(8), s);
        assert_eq!(s.rotate(-1).rotate(1), s);
        assert_eq!(EtaSeq::base().reverse(), EtaSeq::base());
        let s = eta(&[4, 2, 1, 3, 2, 2, 1]);
        assert_eq!(s.reverse(), eta(&[1, 2, 2, 3, 1, 2, 4]));
        assert_eq!(s.reverse().reverse(), s);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(EtaSeq::base().expand(0).unwrap(), eta(&[2, 1, 2, 1]));
        assert_eq!(
            eta(&[3, 1, 2, 2, 1]).expand(0).unwrap(),
            eta(&[4, 1, 2, 2, 2, 1])
        );
        // wrap-around gap between the last and first entries
        assert_eq!(
            eta(&[2, 1, 2, 1]).expand(3).unwrap().entries(),
            &[3, 1, 2, 2, 1]
        );
        assert!(EtaSeq::base().expand(3).is_err());
    }

    #[test]
    fn contract_examples() {
        assert_eq!(eta(&[2, 1, 2, 1]).contract(1).unwrap(), EtaSeq::base());
        assert_eq!(
            eta(&[4, 1, 2, 2, 2, 1]).contract(1).unwrap(),
            eta(&[3, 1, 2, 2, 1])
        );
        assert!(matches!(
            EtaSeq::base().contract(0),
            Err(Error::ContractionImpossible { .. })
        ));
        assert!(eta(&[2, 1, 2, 1]).contract(0).is_err());
    }

    #[test]
    fn expand_then_contract_is_identity() {
        let s = eta(&[1, 3, 2, 1, 5, 1, 2, 3]);
        for i in 0..s.len() {
            let e = s.expand(i).unwrap();
            assert_eq!(e.contract(i + 1).unwrap(), s, "gap {i}");
        }
    }

    #[test]
    fn reduction_reaches_base() {
        let s = eta(&[1, 3, 2, 1, 5, 1, 2, 3]);
        assert_eq!(s.reduction_path().len(), 5);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_sequence("2,1,3,1,2").unwrap(), vec![2, 1, 3, 1, 2]);
        assert_eq!(parse_sequence("(1, 1, 1)").unwrap(), vec![1, 1, 1]);
        assert_eq!(format_sequence(&[1, 2, 3]), "1,2,3");
        assert_eq!("2,1,2,1".parse::<EtaSeq>().unwrap().to_string(), "2,1,2,1");
        assert!("2,2,2".parse::<EtaSeq>().is_err());
    }
}
