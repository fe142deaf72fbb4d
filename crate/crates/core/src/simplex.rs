//! The simplex category: monotone maps `[m] -> [n]` stored as value tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::text::Scanner;

/// A weakly monotone map `[src] -> [tgt]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexMap {
    src: usize,
    tgt: usize,
    values: Vec<usize>,
}

impl SimplexMap {
    pub fn new(src: usize, tgt: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != src + 1 {
            return Err(Error::Invalid(format!("[{src}] needs {} values, got {}", src + 1, values.len())));
        }
        if values.iter().any(|&v| v > tgt) {
            return Err(Error::Invalid(format!("value out of range [{tgt}]")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("values are not monotone".into()));
        }
        Ok(SimplexMap { src, tgt, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap { src: n, tgt: n, values: (0..=n).collect() }
    }

    /// The coface `d^i : [n-1] -> [n]` that skips `i`.
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Invalid(format!("no coface d^{i} into [{n}]")));
        }
        let values = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
        Ok(SimplexMap { src: n - 1, tgt: n, values })
    }

    /// The codegeneracy `s^j : [n+1] -> [n]` that hits `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Result<Self> {
        if j > n {
            return Err(Error::Invalid(format!("no codegeneracy s^{j} onto [{n}]")));
        }
        let values = (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
        Ok(SimplexMap { src: n + 1, tgt: n, values })
    }

    /// The map `[m] -> [n]` constant at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Result<Self> {
        Self::new(m, n, vec![v; m + 1])
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && self.values[self.src] == self.tgt && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SimplexMap) -> Result<SimplexMap> {
        if f.tgt != self.src {
            return Err(Error::Mismatch(format!("cannot compose [{}]->[{}] after [{}]->[{}]", self.src, self.tgt, f.src, f.tgt)));
        }
        let values = f.values.iter().map(|&v| self.values[v]).collect();
        Ok(SimplexMap { src: f.src, tgt: self.tgt, values })
    }

    /// Image factorization `self = mono ∘ epi`.
    pub fn factorize(&self) -> (SimplexMap, SimplexMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let k = image.len() - 1;
        let epi = self.values.iter().map(|v| image.binary_search(v).expect("value in image")).collect();
        (SimplexMap { src: self.src, tgt: k, values: epi }, SimplexMap { src: k, tgt: self.tgt, values: image })
    }

    /// Normal form `d^{i_1} ⋯ d^{i_a} s^{j_1} ⋯ s^{j_b}` with
    /// `i_1 > ⋯ > i_a` and `j_1 < ⋯ < j_b`, returned as the two index lists.
    pub fn generator_word(&self) -> (Vec<usize>, Vec<usize>) {
        let (epi, mono) = self.factorize();
        let faces: Vec<usize> = (0..=mono.tgt).rev().filter(|v| !mono.values.contains(v)).collect();
        let degens: Vec<usize> = (0..epi.src).filter(|&t| epi.values[t] == epi.values[t + 1]).collect();
        (faces, degens)
    }

    /// Rebuild a map from [`SimplexMap::generator_word`] output.
    pub fn from_generator_word(src: usize, faces: &[usize], degens: &[usize]) -> Result<SimplexMap> {
        let mut acc = SimplexMap::identity(src);
        for &j in degens.iter().rev() {
            let s = SimplexMap::codegeneracy(acc.tgt.checked_sub(1).ok_or_else(|| Error::Invalid("degeneracy of [0]".into()))?, j)?;
            acc = s.compose(&acc)?;
        }
        for &i in faces.iter().rev() {
            let d = SimplexMap::coface(acc.tgt + 1, i)?;
            acc = d.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Preimages `{j | φ(i-1) < j ≤ φ(i)}` for `i = 1..=src`, as ranges.
    pub fn gamma_range(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        (self.values[i - 1] + 1)..=self.values[i]
    }

    /// All monotone maps `[m] -> [n]` in lexicographic order.
    pub fn hom(m: usize, n: usize) -> Vec<SimplexMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<SimplexMap>) {
            if cur.len() == m + 1 {
                out.push(SimplexMap { src: m, tgt: n, values: cur.clone() });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                go(m, n, v, cur, out);
                cur.pop();
            }
        }
        go(m, n, 0, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:(", self.src, self.tgt)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn parse_values(sc: &mut Scanner<'_>) -> Result<Vec<usize>> {
    sc.expect("(")?;
    let mut values = Vec::new();
    while !sc.eat(")") {
        if sc.peek().is_none() {
            return parse_err(sc.pos(), "unterminated value list");
        }
        values.push(sc.nat()?);
    }
    Ok(values)
}

impl FromStr for SimplexMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sc = Scanner::new(s);
        sc.expect("[")?;
        let m = sc.nat()?;
        sc.expect("]")?;
        sc.expect("->")?;
        sc.expect("[")?;
        let n = sc.nat()?;
        sc.expect("]")?;
        sc.expect(":")?;
        let at = sc.pos();
        let values = parse_values(&mut sc)?;
        sc.finish()?;
        SimplexMap::new(m, n, values).or_else(|e| parse_err(at, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, i: usize) -> SimplexMap {
        SimplexMap::coface(n, i).unwrap()
    }

    fn s(n: usize, j: usize) -> SimplexMap {
        SimplexMap::codegeneracy(n, j).unwrap()
    }

    #[test]
    fn spec_compositions() {
        let id2 = SimplexMap::identity(2);
        assert_eq!(id2.compose(&id2).unwrap(), id2);
        assert_eq!(d(3, 1).compose(&d(2, 1)).unwrap().values(), &[0, 3]);
        assert_eq!(s(0, 0).compose(&d(1, 0)).unwrap(), SimplexMap::identity(0));
        assert!(d(2, 0).compose(&d(2, 0)).is_err());
    }

    #[test]
    fn hom_counts() {
        for n in 0..5 {
            assert_eq!(SimplexMap::hom(0, n).len(), n + 1);
        }
        assert_eq!(SimplexMap::hom(1, 1).len(), 3);
        assert_eq!(SimplexMap::hom(2, 1).len(), 4);
    }

    #[test]
    fn factorization_examples() {
        let id = SimplexMap::identity(3);
        assert_eq!(id.factorize(), (id.clone(), id.clone()));
        assert_eq!(s(0, 0).factorize(), (s(0, 0), SimplexMap::identity(0)));
        let f = SimplexMap::new(2, 2, vec![0, 0, 2]).unwrap();
        let (e, m) = f.factorize();
        assert_eq!(e.values(), &[0, 0, 1]);
        assert_eq!(m.values(), &[0, 2]);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 0..=3 {
            for j in 0..=n + 2 {
                for i in 0..j {
                    // d^j d^i = d^i d^{j-1}
                    assert_eq!(d(n + 2, j).compose(&d(n + 1, i)).unwrap(), d(n + 2, i).compose(&d(n + 1, j - 1)).unwrap());
                }
            }
            for j in 0..=n {
                for i in 0..=j {
                    // s^j s^i = s^i s^{j+1}
                    assert_eq!(s(n, j).compose(&s(n + 1, i)).unwrap(), s(n, i).compose(&s(n + 1, j + 1)).unwrap());
                }
            }
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = s(n, j).compose(&d(n + 1, i)).unwrap();
                    let rhs = if i < j {
                        d(n, i).compose(&s(n - 1, j - 1)).unwrap()
                    } else if i == j || i == j + 1 {
                        SimplexMap::identity(n)
                    } else {
                        d(n, i - 1).compose(&s(n - 1, j)).unwrap()
                    };
                    assert_eq!(lhs, rhs, "s^{j} d^{i} on [{n}]");
                }
            }
        }
    }

    #[test]
    fn generator_words_round_trip() {
        for m in 0..=4 {
            for n in 0..=4 {
                for f in SimplexMap::hom(m, n) {
                    let (faces, degens) = f.generator_word();
                    assert_eq!(SimplexMap::from_generator_word(m, &faces, &degens).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f: SimplexMap = "[2]->[3]:(0 0 3)".parse().unwrap();
        assert_eq!(f.to_string(), "[2]->[3]:(0 0 3)");
        assert!("[1]->[1]:(1 0)".parse::<SimplexMap>().is_err());
        assert!("[1]->[1]:(0)".parse::<SimplexMap>().is_err());
    }
}
