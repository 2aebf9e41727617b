//! Even binary partitions and their text form.
//!
//! A [`BinaryPartition`] stores, for each level `k >= 1`, the number of parts
//! of size `2^k`. Parts of size 1 are never stored: inside the Gray sequence
//! they are implied by the target total. [`PaddedPartition`] pairs an even
//! partition with an explicit count of 1s for the places where those matter.
//!
//! The canonical text form lists `size^mult` tokens in strictly descending
//! size order, e.g. `256^5 32^2 16^1 4^4 2^3`. A partition made of a single
//! part prints as that part alone (`2`), and the empty partition prints as
//! `-`. The parser also accepts bare sizes, tokens in any order, repeated
//! sizes, and the plus form `8+8+4+2+2`.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent `k` of a part of size `2^k`.
pub type Level = u32;

/// Number of parts at one level.
pub type Digit = u64;

/// Rendering style for [`BinaryPartition::format`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    /// `256^5 32^2 16^1`
    #[default]
    Caret,
    /// `8+8+4+2+2`
    Plus,
}

/// A binary partition with only even parts, as a sparse digit map.
///
/// Entries are kept sorted by descending level and every stored digit is
/// nonzero, so the first two entries are the largest and second-largest
/// part sizes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPartition {
    digits: Vec<(Level, Digit)>,
}

impl BinaryPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from `(level, count)` pairs in any order.
    /// Repeated levels accumulate and zero counts are ignored.
    pub fn from_digits<I>(digits: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Level, Digit)>,
    {
        let mut out = Self::default();
        for (level, count) in digits {
            if level == 0 {
                return Err(Error::UnitPart);
            }
            out.add(level, count)?;
        }
        Ok(out)
    }

    /// Builds a partition from `(level, count)` pairs already sorted by
    /// strictly descending level with nonzero counts and no level 0.
    pub(crate) fn from_sorted_unchecked(digits: Vec<(Level, Digit)>) -> Self {
        debug_assert!(digits.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(digits.iter().all(|&(k, d)| k >= 1 && d >= 1));
        Self { digits }
    }

    fn add(&mut self, level: Level, count: Digit) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        match self
            .digits
            .binary_search_by_key(&Reverse(level), |&(k, _)| Reverse(k))
        {
            Ok(pos) => {
                let d = &mut self.digits[pos].1;
                *d = d
                    .checked_add(count)
                    .ok_or_else(|| Error::TooLarge(format!("multiplicity at level {level}")))?;
            }
            Err(pos) => self.digits.insert(pos, (level, count)),
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Number of parts of size `2^level`.
    pub fn digit(&self, level: Level) -> Digit {
        self.digits
            .binary_search_by_key(&Reverse(level), |&(k, _)| Reverse(k))
            .map(|pos| self.digits[pos].1)
            .unwrap_or(0)
    }

    /// Nonzero `(level, digit)` pairs, largest level first.
    pub fn digits(&self) -> &[(Level, Digit)] {
        &self.digits
    }

    pub fn largest_level(&self) -> Option<Level> {
        self.digits.first().map(|&(k, _)| k)
    }

    /// Sum of the parts.
    pub fn size(&self) -> BigUint {
        self.digits
            .iter()
            .map(|&(k, d)| BigUint::from(d) << k as usize)
            .sum()
    }

    /// Sum of the parts, if it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        self.digits.iter().try_fold(0u64, |acc, &(k, d)| {
            let part = 1u64.checked_shl(k).filter(|_| k < 64)?;
            acc.checked_add(d.checked_mul(part)?)
        })
    }

    /// Total number of parts.
    pub fn num_parts(&self) -> u128 {
        self.digits.iter().map(|&(_, d)| d as u128).sum()
    }

    /// Halves every part and drops the parts that become 1.
    pub fn floor_halve(&self) -> Self {
        let digits = self
            .digits
            .iter()
            .filter(|&&(k, _)| k > 1)
            .map(|&(k, d)| (k - 1, d))
            .collect();
        Self::from_sorted_unchecked(digits)
    }

    /// Doubles every part.
    pub fn double(&self) -> Self {
        let digits = self.digits.iter().map(|&(k, d)| (k + 1, d)).collect();
        Self::from_sorted_unchecked(digits)
    }

    pub fn format(&self, style: Style) -> String {
        match style {
            Style::Caret => format_caret(self.digits.iter().copied()),
            Style::Plus => format_plus(self.digits.iter().copied()),
        }
    }

    /// Parses the caret or plus form. Parts of size 1 are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let (digits, ones) = parse_tokens(text)?;
        if ones > 0 {
            return Err(Error::UnitPart);
        }
        Ok(digits)
    }
}

impl fmt::Display for BinaryPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Caret))
    }
}

impl FromStr for BinaryPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// An even partition together with a number of explicit parts of size 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaddedPartition {
    pub even_part: BinaryPartition,
    pub ones: u64,
}

impl PaddedPartition {
    pub fn new(even_part: BinaryPartition, ones: u64) -> Self {
        Self { even_part, ones }
    }

    /// The all-1s partition of `n`.
    pub fn all_ones(n: u64) -> Self {
        Self::new(BinaryPartition::empty(), n)
    }

    /// Sum of all parts, 1s included. Panics if it does not fit in a `u64`.
    pub fn total(&self) -> u64 {
        self.even_part
            .size_u64()
            .expect("partition size overflows u64")
            + self.ones
    }

    /// Doubles every part; the 1s become 2s.
    pub fn double(&self) -> BinaryPartition {
        let mut out = self.even_part.double();
        out.add(1, self.ones).expect("multiplicity overflow");
        out
    }

    /// `(level, digit)` pairs including level 0, largest level first.
    pub fn all_digits(&self) -> impl Iterator<Item = (Level, Digit)> + '_ {
        self.even_part
            .digits()
            .iter()
            .copied()
            .chain((self.ones > 0).then_some((0, self.ones)))
    }

    pub fn format(&self, style: Style) -> String {
        match style {
            Style::Caret => format_caret(self.all_digits()),
            Style::Plus => format_plus(self.all_digits()),
        }
    }

    /// Parses the caret or plus form, accepting parts of size 1.
    pub fn parse(text: &str) -> Result<Self> {
        let (even_part, ones) = parse_tokens(text)?;
        Ok(Self { even_part, ones })
    }
}

impl fmt::Display for PaddedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Caret))
    }
}

impl FromStr for PaddedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn part_size(level: Level) -> String {
    if level < 128 {
        (1u128 << level).to_string()
    } else {
        (BigUint::one() << level as usize).to_string()
    }
}

fn format_caret<I: Iterator<Item = (Level, Digit)>>(digits: I) -> String {
    let digits: Vec<_> = digits.collect();
    match digits.as_slice() {
        [] => "-".to_string(),
        [(k, 1)] => part_size(*k),
        _ => digits
            .iter()
            .map(|&(k, d)| format!("{}^{}", part_size(k), d))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn format_plus<I: Iterator<Item = (Level, Digit)>>(digits: I) -> String {
    let mut out = String::new();
    for (k, d) in digits {
        let size = part_size(k);
        for _ in 0..d {
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&size);
        }
    }
    if out.is_empty() {
        out.push('-');
    }
    out
}

fn parse_decimal(text: &str, token: &str) -> Result<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Malformed(token.to_string()));
    }
    BigUint::parse_bytes(text.as_bytes(), 10).ok_or_else(|| Error::Malformed(token.to_string()))
}

fn parse_level(text: &str, token: &str) -> Result<Level> {
    let size = parse_decimal(text, token)?;
    if size.is_zero() || size.count_ones() != 1 {
        return Err(Error::NotPowerOfTwo(text.to_string()));
    }
    (size.bits() - 1)
        .to_u32()
        .ok_or_else(|| Error::TooLarge(format!("part `{text}`")))
}

/// Returns the even part and the number of 1s.
fn parse_tokens(text: &str) -> Result<(BinaryPartition, u64)> {
    let text = text.trim();
    if text == "-" {
        return Ok((BinaryPartition::empty(), 0));
    }
    if text.is_empty() {
        return Err(Error::Malformed(String::new()));
    }
    let tokens: Vec<&str> = if text.contains('+') {
        text.split('+').map(str::trim).collect()
    } else {
        text.split_whitespace().collect()
    };

    let mut even = BinaryPartition::empty();
    let mut ones = 0u64;
    for token in tokens {
        let (size, mult) = match token.split_once('^') {
            Some((size, mult)) => (size, Some(mult)),
            None => (token, None),
        };
        let level = parse_level(size, token)?;
        let mult = match mult {
            None => 1,
            Some(m) => {
                let m = parse_decimal(m, token)
                    .map_err(|_| Error::BadMultiplicity(token.to_string()))?;
                if m.is_zero() {
                    return Err(Error::BadMultiplicity(token.to_string()));
                }
                m.to_u64()
                    .ok_or_else(|| Error::TooLarge(format!("multiplicity in `{token}`")))?
            }
        };
        if level == 0 {
            ones = ones
                .checked_add(mult)
                .ok_or_else(|| Error::TooLarge("number of 1s".to_string()))?;
        } else {
            even.add(level, mult)?;
        }
    }
    Ok((even, ones))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("2").digits(), &[(1, 1)]);
        let big = p("256^5 32^2 16^1 4^4 2^3");
        assert_eq!(big.digits(), &[(8, 5), (5, 2), (4, 1), (2, 4), (1, 3)]);
        assert_eq!(big.size(), BigUint::from(1382u32));
        let plus = p("8+8+4+2+2");
        assert_eq!(plus.digits(), &[(3, 2), (2, 1), (1, 2)]);
        assert_eq!(plus.size_u64(), Some(24));
    }

    #[test]
    fn parse_is_order_insensitive_and_accumulates() {
        assert_eq!(p("2 8 2^2 8"), p("8^2 2^3"));
        assert_eq!(p("2+8+8+2+2"), p("8^2 2^3"));
        assert_eq!(p("  -  "), BinaryPartition::empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(p_err("3"), Error::NotPowerOfTwo("3".into()));
        assert_eq!(p_err("0"), Error::NotPowerOfTwo("0".into()));
        assert_eq!(p_err("4 1"), Error::UnitPart);
        assert_eq!(p_err("2+1+1"), Error::UnitPart);
        assert_eq!(p_err("4^0"), Error::BadMultiplicity("4^0".into()));
        assert_eq!(p_err("4^-1"), Error::BadMultiplicity("4^-1".into()));
        assert_eq!(p_err("4^"), Error::BadMultiplicity("4^".into()));
        assert!(matches!(p_err("x"), Error::Malformed(_)));
        assert!(matches!(p_err("+4"), Error::Malformed(_)));
        assert!(matches!(p_err(""), Error::Malformed(_)));
        assert!(matches!(p_err("4^2^3"), Error::BadMultiplicity(_)));
    }

    fn p_err(s: &str) -> Error {
        BinaryPartition::parse(s).unwrap_err()
    }

    #[test]
    fn format_examples() {
        assert_eq!(p("2").to_string(), "2");
        assert_eq!(p("8^2 4 2^2").format(Style::Plus), "8+8+4+2+2");
        assert_eq!(
            p("2^3 4^4 16 32^2 256^5").to_string(),
            "256^5 32^2 16^1 4^4 2^3"
        );
        assert_eq!(BinaryPartition::empty().to_string(), "-");
        assert_eq!(BinaryPartition::empty().format(Style::Plus), "-");
        assert_eq!(p("4 4").to_string(), "4^2");
    }

    #[test]
    fn huge_parts_round_trip() {
        let text = format!("{} 2", BigUint::one() << 200usize);
        let q = p(&text);
        assert_eq!(q.digits(), &[(200, 1), (1, 1)]);
        assert_eq!(q.size_u64(), None);
        assert_eq!(p(&q.to_string()), q);
    }

    #[test]
    fn size_and_halving() {
        assert_eq!(BinaryPartition::empty().size(), BigUint::zero());
        assert_eq!(p("8+8+4+2+2").floor_halve(), p("4+4+2"));
        assert_eq!(p("4+4+2").floor_halve(), p("2+2"));
        assert_eq!(
            BinaryPartition::empty().floor_halve(),
            BinaryPartition::empty()
        );
        assert_eq!(BinaryPartition::empty().double(), BinaryPartition::empty());
        assert_eq!(p("2+2").double(), p("4+4"));
        assert_eq!(p("4+4+2").double(), p("8+8+4"));
    }

    #[test]
    fn padded_format_and_parse() {
        let q = PaddedPartition::new(p("4 2"), 3);
        assert_eq!(q.to_string(), "4^1 2^1 1^3");
        assert_eq!(q.format(Style::Plus), "4+2+1+1+1");
        assert_eq!(q.total(), 9);
        assert_eq!(PaddedPartition::parse("4^1 2^1 1^3").unwrap(), q);
        assert_eq!(PaddedPartition::all_ones(1).to_string(), "1");
        assert_eq!(PaddedPartition::all_ones(0).to_string(), "-");
        assert_eq!(q.double(), p("8 4 2^3"));
    }
}
