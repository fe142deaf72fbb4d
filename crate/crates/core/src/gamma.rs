//! Segal's category Γ. A morphism `<n> -> <m>` assigns to each `i` a subset
//! of `{1..m}`, pairwise disjoint; subsets are bitmasks (bit `j-1` is `j`).

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::simplex::SimplexMap;
use crate::text::Scanner;

pub const MAX_GAMMA: usize = 64;

pub type Subset = u64;

pub fn subset_elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| s >> b & 1 == 1).map(|b| b + 1)
}

fn full(m: usize) -> Subset {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaMorphism {
    src: usize,
    tgt: usize,
    assignment: Vec<Subset>,
}

impl GammaMorphism {
    pub fn new(src: usize, tgt: usize, assignment: Vec<Subset>) -> Result<Self> {
        if tgt > MAX_GAMMA {
            return Err(Error::Invalid(format!("<{tgt}> exceeds <{MAX_GAMMA}>")));
        }
        if assignment.len() != src {
            return Err(Error::Invalid(format!("<{src}> needs {src} subsets, got {}", assignment.len())));
        }
        let mut seen = 0;
        for &a in &assignment {
            if a & !full(tgt) != 0 {
                return Err(Error::Invalid(format!("subset leaves <{tgt}>")));
            }
            if a & seen != 0 {
                return Err(Error::Invalid("subsets are not disjoint".into()));
            }
            seen |= a;
        }
        Ok(GammaMorphism { src, tgt, assignment })
    }

    pub fn identity(n: usize) -> Self {
        GammaMorphism { src: n, tgt: n, assignment: (0..n).map(|i| 1 << i).collect() }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn assignment(&self) -> &[Subset] {
        &self.assignment
    }

    /// The subset assigned to `i` (1-based).
    pub fn at(&self, i: usize) -> Subset {
        self.assignment[i - 1]
    }

    /// Union of `self(i)` over `i ∈ set`.
    pub fn image_of(&self, set: Subset) -> Subset {
        subset_elements(set).fold(0, |acc, i| acc | self.at(i))
    }

    /// `self ∘ phi`: `i ↦ ∪_{j ∈ phi(i)} self(j)`.
    pub fn compose(&self, phi: &GammaMorphism) -> Result<GammaMorphism> {
        if phi.tgt != self.src {
            return Err(Error::Mismatch(format!("cannot compose <{}>-><{}> after <{}>-><{}>", self.src, self.tgt, phi.src, phi.tgt)));
        }
        let assignment = phi.assignment.iter().map(|&s| self.image_of(s)).collect();
        Ok(GammaMorphism { src: phi.src, tgt: self.tgt, assignment })
    }

    /// The functor Δ → Γ: `F(φ)(i) = {j | φ(i-1) < j ≤ φ(i)}`.
    pub fn from_simplex(phi: &SimplexMap) -> GammaMorphism {
        let v = phi.values();
        let assignment = (1..=phi.src()).map(|i| full(v[i]) & !full(v[i - 1])).collect();
        GammaMorphism { src: phi.src(), tgt: phi.tgt(), assignment }
    }

    /// All morphisms `<n> -> <m>`: each `j ∈ <m>` goes to one of the `n`
    /// subsets or to none.
    pub fn hom(n: usize, m: usize) -> Vec<GammaMorphism> {
        let mut out = Vec::new();
        let mut choice = vec![0usize; m];
        loop {
            let mut assignment = vec![0; n];
            for (j, &c) in choice.iter().enumerate() {
                if c > 0 {
                    assignment[c - 1] |= 1 << j;
                }
            }
            out.push(GammaMorphism { src: n, tgt: m, assignment });
            let mut k = 0;
            loop {
                if k == m {
                    out.sort();
                    return out;
                }
                choice[k] += 1;
                if choice[k] <= n {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

impl fmt::Display for GammaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>-><{}>:{{", self.src, self.tgt)?;
        for (i, &s) in self.assignment.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, e) in subset_elements(s).enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for GammaMorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sc = Scanner::new(s);
        sc.expect("<")?;
        let n = sc.nat()?;
        sc.expect(">")?;
        sc.expect("->")?;
        sc.expect("<")?;
        let m = sc.nat()?;
        sc.expect(">")?;
        sc.expect(":")?;
        let at = sc.pos();
        sc.expect("{")?;
        let mut assignment = Vec::new();
        if !sc.eat("}") {
            loop {
                sc.expect("{")?;
                let mut set: Subset = 0;
                if !sc.eat("}") {
                    loop {
                        let p = sc.pos();
                        let e = sc.nat()?;
                        if e == 0 || e > m.min(MAX_GAMMA) {
                            return parse_err(p, format!("{e} is not in <{m}>"));
                        }
                        set |= 1 << (e - 1);
                        if sc.eat("}") {
                            break;
                        }
                        sc.expect(",")?;
                    }
                }
                assignment.push(set);
                if sc.eat("}") {
                    break;
                }
                sc.expect(",")?;
            }
        }
        sc.finish()?;
        GammaMorphism::new(n, m, assignment).or_else(|e| parse_err(at, e.to_string()))
    }
}

/// The fibered product of a cospan in Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPullback {
    /// Pairs `(I, J)` in lexicographic order of their sorted elements.
    pub elements: Vec<(Subset, Subset)>,
    pub proj_left: GammaMorphism,
    pub proj_right: GammaMorphism,
}

impl GammaPullback {
    pub fn apex(&self) -> usize {
        self.elements.len()
    }
}

fn lex_key(s: Subset) -> Vec<usize> {
    subset_elements(s).collect()
}

/// Pullback of `f: <n> -> <l>` and `g: <m> -> <l>`.
///
/// The elements are the nonempty pairs `(I, J)` with `∪f(I) = ∪g(J)` that
/// are minimal under containment. They are exactly the connected components
/// of the graph on `<n> ⊔ <m>` joining `i` and `j` when `f(i) ∩ g(j) ≠ ∅`
/// whose two unions agree; in particular an `i` with `f(i) = ∅` yields the
/// element `({i}, ∅)`.
pub fn gamma_pullback(f: &GammaMorphism, g: &GammaMorphism) -> Result<GammaPullback> {
    if f.tgt != g.tgt {
        return Err(Error::Mismatch(format!("cospan targets <{}> and <{}>", f.tgt, g.tgt)));
    }
    let (n, m) = (f.src, g.src);
    let mut seen_i: Subset = 0;
    let mut seen_j: Subset = 0;
    let mut elements = Vec::new();
    let grow = |mut ii: Subset, mut jj: Subset| loop {
        let ni = (1..=n).filter(|&i| f.at(i) & g.image_of(jj) != 0).fold(ii, |a, i| a | 1 << (i - 1));
        let nj = (1..=m).filter(|&j| g.at(j) & f.image_of(ni) != 0).fold(jj, |a, j| a | 1 << (j - 1));
        if ni == ii && nj == jj {
            return (ii, jj);
        }
        ii = ni;
        jj = nj;
    };
    for i in 1..=n {
        if seen_i >> (i - 1) & 1 == 0 {
            let (ii, jj) = grow(1 << (i - 1), 0);
            seen_i |= ii;
            seen_j |= jj;
            if f.image_of(ii) == g.image_of(jj) {
                elements.push((ii, jj));
            }
        }
    }
    for j in 1..=m {
        if seen_j >> (j - 1) & 1 == 0 {
            let (ii, jj) = grow(0, 1 << (j - 1));
            seen_j |= jj;
            if f.image_of(ii) == g.image_of(jj) {
                elements.push((ii, jj));
            }
        }
    }
    elements.sort_by_key(|&(i, j)| (lex_key(i), lex_key(j)));
    let proj_left = GammaMorphism::new(elements.len(), n, elements.iter().map(|e| e.0).collect())?;
    let proj_right = GammaMorphism::new(elements.len(), m, elements.iter().map(|e| e.1).collect())?;
    Ok(GammaPullback { elements, proj_left, proj_right })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm(s: &str) -> GammaMorphism {
        s.parse().unwrap()
    }

    #[test]
    fn spec_compositions() {
        let phi = gm("<1>-><2>:{{1,2}}");
        let sigma = gm("<2>-><2>:{{2},{}}");
        assert_eq!(sigma.compose(&phi).unwrap(), gm("<1>-><2>:{{2}}"));
        assert_eq!(GammaMorphism::identity(1).compose(&gm("<2>-><1>:{{},{1}}")).unwrap(), gm("<2>-><1>:{{},{1}}"));
        let empty = gm("<2>-><2>:{{},{}}");
        assert_eq!(sigma.compose(&empty).unwrap(), empty);
    }

    #[test]
    fn from_simplex_examples() {
        assert_eq!(GammaMorphism::from_simplex(&SimplexMap::identity(3)), GammaMorphism::identity(3));
        let d1 = SimplexMap::coface(1, 1).unwrap();
        assert_eq!(GammaMorphism::from_simplex(&d1), gm("<0>-><1>:{}"));
        let s0 = SimplexMap::codegeneracy(0, 0).unwrap();
        assert_eq!(GammaMorphism::from_simplex(&s0), gm("<1>-><0>:{{}}"));
    }

    #[test]
    fn pullback_examples() {
        let id2 = GammaMorphism::identity(2);
        let p = gamma_pullback(&id2, &id2).unwrap();
        assert_eq!(p.elements, vec![(1, 1), (2, 2)]);
        let p = gamma_pullback(&gm("<1>-><2>:{{1}}"), &gm("<1>-><2>:{{2}}")).unwrap();
        assert_eq!(p.apex(), 0);
        let p = gamma_pullback(&id2, &gm("<1>-><2>:{{1,2}}")).unwrap();
        assert_eq!(p.elements, vec![(0b11, 0b1)]);
        let p = gamma_pullback(&gm("<2>-><1>:{{},{1}}"), &GammaMorphism::identity(1)).unwrap();
        assert_eq!(p.elements, vec![(0b1, 0), (0b10, 0b1)]);
    }

    #[test]
    fn hom_counts() {
        // each of the m target points picks one of n subsets or none
        for n in 0..4 {
            for m in 0..4 {
                assert_eq!(GammaMorphism::hom(n, m).len(), (n + 1).pow(m as u32));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["<3>-><3>:{{1,2},{},{3}}", "<0>-><2>:{}", "<1>-><0>:{{}}"] {
            assert_eq!(gm(s).to_string(), s);
        }
        assert!("<2>-><2>:{{1},{1}}".parse::<GammaMorphism>().is_err());
        assert!("<1>-><2>:{{3}}".parse::<GammaMorphism>().is_err());
    }
}
