//! Fixed-length binary strings, their prefixes/suffixes, and
//! reversal-equivalence classes of string multisets.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringsError {
    #[error("a binary string must have length at least 1")]
    Empty,
    #[error("invalid character {found:?} at position {pos}; expected '0' or '1'")]
    InvalidBit { pos: usize, found: char },
    #[error("affix length {len} out of range 1..={n}")]
    AffixOutOfRange { len: usize, n: usize },
    #[error("a string multiset must be nonempty")]
    EmptyMultiset,
    #[error("all strings in a multiset must have the same length (found {a} and {b})")]
    MixedLengths { a: usize, b: usize },
    #[error("all strings in a multiset must have the same weight (found {a} and {b})")]
    MixedWeights { a: usize, b: usize },
    #[error("weight {w} exceeds length {n}")]
    WeightOutOfRange { w: usize, n: usize },
}

/// An immutable binary string of fixed length `n >= 1`.
///
/// Bits are stored most significant position first: bit 1 of the
/// mathematical string is `bits()[0]`, matching the ASCII serialization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self, StringsError> {
        if bits.is_empty() {
            return Err(StringsError::Empty);
        }
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(StringsError::InvalidBit {
                    pos: i + 1,
                    found: (b'0' + b.min(9)) as char,
                });
            }
        }
        Ok(BitString { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Bit at 1-based position `i`.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn reverse(&self) -> BitString {
        let mut bits = self.bits.clone();
        bits.reverse();
        BitString { bits }
    }

    /// The length-`len` prefix, for `1 <= len <= n`.
    pub fn prefix(&self, len: usize) -> Result<BitString, StringsError> {
        if len == 0 || len > self.len() {
            return Err(StringsError::AffixOutOfRange { len, n: self.len() });
        }
        Ok(BitString {
            bits: self.bits[..len].to_vec(),
        })
    }

    /// The length-`len` suffix, for `1 <= len <= n`.
    pub fn suffix(&self, len: usize) -> Result<BitString, StringsError> {
        if len == 0 || len > self.len() {
            return Err(StringsError::AffixOutOfRange { len, n: self.len() });
        }
        Ok(BitString {
            bits: self.bits[self.len() - len..].to_vec(),
        })
    }

    /// Running prefix weights: position `l` holds the weight of the
    /// length-`l` prefix, for `l = 0..=n`.
    pub fn prefix_weights(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = 0usize;
        out.push(0);
        for &b in &self.bits {
            acc += b as usize;
            out.push(acc);
        }
        out
    }

    /// The lexicographically smaller of the string and its reversal.
    pub fn reversal_min(&self) -> BitString {
        let rev = self.reverse();
        if rev.bits < self.bits {
            rev
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = StringsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(StringsError::Empty);
        }
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(StringsError::InvalidBit { pos: i + 1, found: c }),
            }
        }
        Ok(BitString { bits })
    }
}

/// A nonempty multiset of binary strings sharing one length and one weight.
///
/// Members are kept sorted, so equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringMultiset {
    strings: Vec<BitString>,
}

impl StringMultiset {
    pub fn new(mut strings: Vec<BitString>) -> Result<Self, StringsError> {
        let first = strings.first().ok_or(StringsError::EmptyMultiset)?;
        let (n, w) = (first.len(), first.weight());
        for s in &strings {
            if s.len() != n {
                return Err(StringsError::MixedLengths { a: n, b: s.len() });
            }
            if s.weight() != w {
                return Err(StringsError::MixedWeights { a: w, b: s.weight() });
            }
        }
        strings.sort();
        Ok(StringMultiset { strings })
    }

    /// Common string length.
    pub fn n(&self) -> usize {
        self.strings[0].len()
    }

    /// Number of strings (with multiplicity).
    pub fn h(&self) -> usize {
        self.strings.len()
    }

    /// Common weight.
    pub fn weight(&self) -> usize {
        self.strings[0].weight()
    }

    pub fn strings(&self) -> &[BitString] {
        &self.strings
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitString> {
        self.strings.iter()
    }

    /// The reversal-equivalence class of this multiset.
    pub fn canonical_class(&self) -> ReversalClass {
        let members = self.strings.iter().map(BitString::reversal_min).collect();
        ReversalClass {
            canonical: StringMultiset::new(members).expect("canonicalization preserves validity"),
        }
    }
}

impl fmt::Display for StringMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.strings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// A reversal-equivalence class of string multisets.
///
/// Two multisets compare equal here exactly when one can be obtained from
/// the other by reversing members: the canonical form replaces every member
/// by the lexicographic minimum of the string and its reversal and sorts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReversalClass {
    canonical: StringMultiset,
}

impl ReversalClass {
    pub fn canonical(&self) -> &StringMultiset {
        &self.canonical
    }
}

impl fmt::Display for ReversalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

/// All binomial(n, w) strings of length `n` and weight `w`, in ascending
/// lexicographic order.
pub fn enumerate_constant_weight(n: usize, w: usize) -> Result<Vec<BitString>, StringsError> {
    if n == 0 {
        return Err(StringsError::Empty);
    }
    if w > n {
        return Err(StringsError::WeightOutOfRange { w, n });
    }
    let mut out = Vec::new();
    let mut bits = vec![0u8; n];
    fill_constant_weight(&mut bits, 0, w, &mut out);
    Ok(out)
}

fn fill_constant_weight(bits: &mut Vec<u8>, pos: usize, ones_left: usize, out: &mut Vec<BitString>) {
    let slots = bits.len() - pos;
    if ones_left > slots {
        return;
    }
    if pos == bits.len() {
        out.push(BitString { bits: bits.clone() });
        return;
    }
    // '0' before '1' keeps the output lexicographically ascending.
    if slots > ones_left {
        bits[pos] = 0;
        fill_constant_weight(bits, pos + 1, ones_left, out);
    }
    if ones_left > 0 {
        bits[pos] = 1;
        fill_constant_weight(bits, pos + 1, ones_left - 1, out);
        bits[pos] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(bs("011101").weight(), 4);
        assert_eq!(bs("000000").weight(), 0);
        assert_eq!(bs("111").weight(), 3);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(bs("011101").reverse(), bs("101110"));
        assert_eq!(bs("010101").reverse(), bs("101010"));
        assert_eq!(bs("0").reverse(), bs("0"));
    }

    #[test]
    fn affix_examples() {
        let t = bs("011101");
        assert_eq!(t.prefix(3).unwrap(), bs("011"));
        assert_eq!(t.suffix(3).unwrap(), bs("101"));
        assert_eq!(t.prefix(6).unwrap(), t);
        assert_eq!(
            t.prefix(0),
            Err(StringsError::AffixOutOfRange { len: 0, n: 6 })
        );
        assert_eq!(
            t.suffix(7),
            Err(StringsError::AffixOutOfRange { len: 7, n: 6 })
        );
    }

    #[test]
    fn canonical_class_examples() {
        let a = StringMultiset::new(vec![bs("011001")]).unwrap();
        let b = StringMultiset::new(vec![bs("100110")]).unwrap();
        assert_eq!(a.canonical_class(), b.canonical_class());
        assert_eq!(a.canonical_class().canonical().strings()[0], bs("011001"));

        let u = StringMultiset::new(vec![bs("010101"), bs("101010")]).unwrap();
        let v = StringMultiset::new(vec![bs("010101"), bs("010101")]).unwrap();
        assert_eq!(u.canonical_class(), v.canonical_class());

        let p = StringMultiset::new(vec![bs("0")]).unwrap();
        assert_eq!(p.canonical_class().canonical().strings()[0], bs("0"));
    }

    #[test]
    fn enumerate_constant_weight_examples() {
        let xs = enumerate_constant_weight(3, 1).unwrap();
        assert_eq!(xs, vec![bs("001"), bs("010"), bs("100")]);

        let xs = enumerate_constant_weight(4, 0).unwrap();
        assert_eq!(xs, vec![bs("0000")]);

        let xs = enumerate_constant_weight(6, 3).unwrap();
        assert_eq!(xs.len(), 20); // binomial(6, 3)
        let mut sorted = xs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, xs);
        assert!(xs.iter().all(|s| s.len() == 6 && s.weight() == 3));
    }

    #[test]
    fn multiset_rejects_mixed_members() {
        assert!(matches!(
            StringMultiset::new(vec![bs("01"), bs("011")]),
            Err(StringsError::MixedLengths { .. })
        ));
        assert!(matches!(
            StringMultiset::new(vec![bs("01"), bs("11")]),
            Err(StringsError::MixedWeights { .. })
        ));
        assert!(matches!(
            StringMultiset::new(vec![]),
            Err(StringsError::EmptyMultiset)
        ));
    }

    /// Exhaustive over all constant-weight multisets with n <= 8, h <= 2:
    /// replacing any member by its reversal never changes the class.
    #[test]
    fn canonical_class_reversal_invariance_exhaustive() {
        for n in 1..=8usize {
            for w in 0..=n {
                let strings = enumerate_constant_weight(n, w).unwrap();
                for i in 0..strings.len() {
                    let u = StringMultiset::new(vec![strings[i].clone()]).unwrap();
                    let v = StringMultiset::new(vec![strings[i].reverse()]).unwrap();
                    assert_eq!(u.canonical_class(), v.canonical_class());
                    for j in i..strings.len() {
                        let u2 =
                            StringMultiset::new(vec![strings[i].clone(), strings[j].clone()])
                                .unwrap();
                        for flip in [(true, false), (false, true), (true, true)] {
                            let a = if flip.0 {
                                strings[i].reverse()
                            } else {
                                strings[i].clone()
                            };
                            let b = if flip.1 {
                                strings[j].reverse()
                            } else {
                                strings[j].clone()
                            };
                            let v2 = StringMultiset::new(vec![a, b]).unwrap();
                            assert_eq!(u2.canonical_class(), v2.canonical_class());
                        }
                    }
                }
            }
        }
    }

    prop_compose! {
        fn arb_bitstring()(n in 1..24usize)(bits in prop::collection::vec(0u8..2, n)) -> BitString {
            BitString::new(bits).unwrap()
        }
    }

    proptest! {
        #[test]
        fn reverse_preserves_weight(t in arb_bitstring()) {
            prop_assert_eq!(t.reverse().weight(), t.weight());
            prop_assert_eq!(t.reverse().reverse(), t);
        }

        #[test]
        fn affix_weights_complement(t in arb_bitstring()) {
            let n = t.len();
            for l in 1..n {
                let wp = t.prefix(l).unwrap().weight();
                let ws = t.suffix(n - l).unwrap().weight();
                prop_assert_eq!(wp + ws, t.weight());
            }
        }

        #[test]
        fn display_parse_roundtrip(t in arb_bitstring()) {
            let s = t.to_string();
            prop_assert_eq!(s.parse::<BitString>().unwrap(), t);
        }
    }
}
