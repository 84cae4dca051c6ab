//! Truncated Cayley graphs of finitely generated groups.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::FiniteMetricSpace;

/// Black-box access to a group.
///
/// Elements compare by their canonical forms; `super_generators` is a fixed
/// symmetric generating set whose word metric defines the ambient ball.
pub trait GroupOracle {
    type Element: Clone + Ord + Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    fn super_generators(&self) -> Vec<Self::Element>;
    fn label(&self, a: &Self::Element) -> String;

    fn canonical(&self, a: &Self::Element) -> Self::Element {
        a.clone()
    }

    fn equal(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.canonical(a) == self.canonical(b)
    }
}

/// `Z^d` with the standard basis and its negatives.
#[derive(Clone, Copy, Debug)]
pub struct IntegerLattice {
    pub dim: usize,
}

impl GroupOracle for IntegerLattice {
    type Element = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.dim]
    }

    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn super_generators(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for sign in [1, -1] {
                let mut e = vec![0; self.dim];
                e[i] = sign;
                out.push(e);
            }
        }
        out
    }

    fn label(&self, a: &Vec<i64>) -> String {
        a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The free group on `rank` letters. Letters are `±1..=±rank`; elements are
/// freely reduced words.
#[derive(Clone, Copy, Debug)]
pub struct FreeGroup {
    pub rank: usize,
}

impl FreeGroup {
    fn reduce(word: &[i32]) -> Vec<i32> {
        let mut out: Vec<i32> = Vec::with_capacity(word.len());
        for &l in word {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }
}

impl GroupOracle for FreeGroup {
    type Element = Vec<i32>;

    fn identity(&self) -> Vec<i32> {
        Vec::new()
    }

    fn multiply(&self, a: &Vec<i32>, b: &Vec<i32>) -> Vec<i32> {
        let mut w = a.clone();
        w.extend_from_slice(b);
        Self::reduce(&w)
    }

    fn inverse(&self, a: &Vec<i32>) -> Vec<i32> {
        a.iter().rev().map(|l| -l).collect()
    }

    fn super_generators(&self) -> Vec<Vec<i32>> {
        (1..=self.rank as i32).flat_map(|l| [vec![l], vec![-l]]).collect()
    }

    fn label(&self, a: &Vec<i32>) -> String {
        if a.is_empty() {
            return "e".into();
        }
        a.iter()
            .map(|&l| {
                let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                if l > 0 {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }

    fn canonical(&self, a: &Vec<i32>) -> Vec<i32> {
        Self::reduce(a)
    }
}

/// A Cayley graph on a fixed word-metric ball.
#[derive(Clone, Debug)]
pub struct CayleyBall<E> {
    pub elements: Vec<E>,
    pub graph: Graph,
    pub metric: FiniteMetricSpace,
}

/// Elements of super-generator word length at most `radius`, ordered by
/// length and then by canonical form, with their lengths.
pub fn word_ball<O: GroupOracle>(oracle: &O, radius: u32) -> Vec<(O::Element, u32)> {
    let gens = oracle.super_generators();
    let mut seen: BTreeMap<O::Element, u32> = BTreeMap::new();
    let e = oracle.canonical(&oracle.identity());
    seen.insert(e.clone(), 0);
    let mut out = vec![(e.clone(), 0)];
    let mut frontier = vec![e];
    for len in 1..=radius {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = oracle.canonical(&oracle.multiply(g, s));
                if !seen.contains_key(&h) {
                    seen.insert(h.clone(), len);
                    next.push(h);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned().map(|h| (h, len)));
        frontier = next;
    }
    out
}

/// The standard generating set `S_n`: every non-identity element of word
/// length at most `n`.
pub fn ball_generators<O: GroupOracle>(oracle: &O, n: u32) -> Vec<O::Element> {
    word_ball(oracle, n).into_iter().filter(|(_, l)| *l > 0).map(|(g, _)| g).collect()
}

/// Checks that `gens` excludes the identity and is closed under inversion.
pub fn check_generators<O: GroupOracle>(oracle: &O, gens: &[O::Element]) -> Result<()> {
    let e = oracle.identity();
    let canon: Vec<O::Element> = gens.iter().map(|s| oracle.canonical(s)).collect();
    for s in gens {
        if oracle.equal(s, &e) {
            return Err(Error::InvalidGenerators("contains the identity".into()));
        }
        let inv = oracle.canonical(&oracle.inverse(s));
        if !canon.contains(&inv) {
            return Err(Error::InvalidGenerators(format!(
                "not symmetric: inverse of {} is missing",
                oracle.label(s)
            )));
        }
    }
    Ok(())
}

/// The Cayley graph of `gens` restricted to the super-generator ball of
/// `radius`, with the super-generator word metric on that ball.
pub fn cayley_graph<O: GroupOracle>(oracle: &O, gens: &[O::Element], radius: u32) -> Result<CayleyBall<O::Element>> {
    if radius == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    check_generators(oracle, gens)?;
    let ball = word_ball(oracle, radius);
    let elements: Vec<O::Element> = ball.iter().map(|(g, _)| g.clone()).collect();
    let position: BTreeMap<&O::Element, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut edges = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        for s in gens {
            let h = oracle.canonical(&oracle.multiply(g, s));
            if let Some(&j) = position.get(&h) {
                if i != j {
                    edges.push((i, j));
                }
            }
        }
    }
    let ids: Vec<String> = elements.iter().map(|g| oracle.label(g)).collect();
    let graph = Graph::new(ids.clone(), edges)?;
    let lengths: BTreeMap<O::Element, u32> = word_ball(oracle, 2 * radius).into_iter().collect();
    let inverses: Vec<O::Element> = elements.iter().map(|g| oracle.inverse(g)).collect();
    let metric = FiniteMetricSpace::from_fn(ids, |i, j| {
        let q = oracle.canonical(&oracle.multiply(&inverses[i], &elements[j]));
        f64::from(lengths[&q])
    })?;
    Ok(CayleyBall { elements, graph, metric })
}
