//! Groups acting on trees: the backend contract and every quantity derived
//! from it (norms, cancellation `δ`, translation length, initial halves,
//! the pre-well-order `≤*` and the Nielsen conditions N1–N4).
//!
//! Everything here is generic over [`TreeAction`], so the Bruhat-Tits tree
//! of PGL₂(Q_p) and the Cayley tree of a free group share one code path.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::Result;
use crate::path::{compare_labels, TreePath};
use crate::word::{Letter, Word};

/// A group acting by isometries on a simplicial tree with a distinguished
/// base vertex and a fixed ordering of the edges at every vertex.
pub trait TreeAction {
    type Element: Clone + fmt::Debug;
    type Vertex: Clone + Eq + Hash + fmt::Debug;
    type Label: Copy + Ord + Hash + fmt::Debug;

    fn base_vertex(&self) -> Self::Vertex;

    fn identity(&self) -> Self::Element;
    fn compose(&self, g: &Self::Element, h: &Self::Element) -> Result<Self::Element>;
    fn inverse(&self, g: &Self::Element) -> Result<Self::Element>;
    fn is_identity(&self, g: &Self::Element) -> bool;

    fn elements_equal(&self, g: &Self::Element, h: &Self::Element) -> Result<bool> {
        Ok(self.is_identity(&self.compose(&self.inverse(h)?, g)?))
    }

    fn act(&self, g: &Self::Element, v: &Self::Vertex) -> Result<Self::Vertex>;
    fn distance(&self, v: &Self::Vertex, w: &Self::Vertex) -> Result<u64>;
    fn path(
        &self,
        v: &Self::Vertex,
        w: &Self::Vertex,
    ) -> Result<TreePath<Self::Vertex, Self::Label>>;

    /// Adjacent vertices in label order.
    fn neighbors(&self, v: &Self::Vertex) -> Result<Vec<(Self::Label, Self::Vertex)>>;
    fn step(&self, v: &Self::Vertex, label: Self::Label) -> Result<Self::Vertex>;

    /// `d(v₀, g v₀)`. Backends may override with a cheaper formula.
    fn displacement(&self, g: &Self::Element) -> Result<u64> {
        let base = self.base_vertex();
        self.distance(&base, &self.act(g, &base)?)
    }

    /// Compares `[v₀, v]` with `[v₀, w]` in the path well-order.
    fn compare_from_base(&self, v: &Self::Vertex, w: &Self::Vertex) -> Result<Ordering> {
        let base = self.base_vertex();
        let (dv, dw) = (self.distance(&base, v)?, self.distance(&base, w)?);
        if dv != dw {
            return Ok(dv.cmp(&dw));
        }
        Ok(compare_labels(
            &self.path(&base, v)?.steps,
            &self.path(&base, w)?.steps,
        ))
    }
}

pub type PathOf<T> = TreePath<<T as TreeAction>::Vertex, <T as TreeAction>::Label>;

/// `|g| = d(v₀, g v₀)`.
pub fn norm<T: TreeAction>(tree: &T, g: &T::Element) -> Result<u64> {
    tree.displacement(g)
}

/// `δ(g, h) = (|g| + |h| - |g⁻¹h|) / 2`, the length of `[v₀, gv₀] ∩ [v₀, hv₀]`.
pub fn delta<T: TreeAction>(tree: &T, g: &T::Element, h: &T::Element) -> Result<u64> {
    let gh = tree.compose(&tree.inverse(g)?, h)?;
    let twice = norm(tree, g)? + norm(tree, h)? - norm(tree, &gh)?;
    debug_assert!(twice % 2 == 0, "odd cancellation length");
    Ok(twice / 2)
}

/// `l(g) = max(0, |g²| - |g|)`.
pub fn translation_length<T: TreeAction>(tree: &T, g: &T::Element) -> Result<u64> {
    let g2 = tree.compose(g, g)?;
    Ok(norm(tree, &g2)?.saturating_sub(norm(tree, g)?))
}

pub fn is_elliptic<T: TreeAction>(tree: &T, g: &T::Element) -> Result<bool> {
    Ok(translation_length(tree, g)? == 0)
}

pub fn is_nontrivial_elliptic<T: TreeAction>(tree: &T, g: &T::Element) -> Result<bool> {
    Ok(!tree.is_identity(g) && is_elliptic(tree, g)?)
}

/// `H(g)`: the first `⌊|g|/2⌋` steps of `[v₀, g v₀]`.
pub fn half<T: TreeAction>(tree: &T, g: &T::Element) -> Result<PathOf<T>> {
    let base = tree.base_vertex();
    let full = tree.path(&base, &tree.act(g, &base)?)?;
    let k = full.len() / 2;
    Ok(full.prefix(k))
}

/// Sort key realising `≤*`: the norm, then the pair `{H(g), H(g⁻¹)}`
/// ordered as a sorted pair.
///
/// Comparing sorted pairs lexicographically is the same as asking which set
/// owns the minimum of the symmetric difference. When `H(g) = H(g⁻¹)` the
/// pair is kept as a multiset with a repeated entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarKey<L: Ord> {
    pub norm: u64,
    pub halves: [Vec<L>; 2],
}

pub fn star_key<T: TreeAction>(tree: &T, g: &T::Element) -> Result<StarKey<T::Label>> {
    let n = norm(tree, g)?;
    let h1 = half(tree, g)?.steps;
    let h2 = half(tree, &tree.inverse(g)?)?.steps;
    let halves = if compare_labels(&h1, &h2) == Ordering::Greater {
        [h2, h1]
    } else {
        [h1, h2]
    };
    Ok(StarKey { norm: n, halves })
}

/// Outcome of comparing two elements under `≤*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarOrdering {
    Less,
    SameComponent,
    Greater,
}

impl From<Ordering> for StarOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => StarOrdering::Less,
            Ordering::Equal => StarOrdering::SameComponent,
            Ordering::Greater => StarOrdering::Greater,
        }
    }
}

pub fn compare_star<T: TreeAction>(
    tree: &T,
    g: &T::Element,
    h: &T::Element,
) -> Result<StarOrdering> {
    let (ng, nh) = (norm(tree, g)?, norm(tree, h)?);
    if ng != nh {
        return Ok(ng.cmp(&nh).into());
    }
    Ok(star_key(tree, g)?.cmp(&star_key(tree, h)?).into())
}

/// `X^±` in canonical order `x₀, x₀⁻¹, x₁, x₁⁻¹, ...`.
#[derive(Clone, Debug)]
pub struct SignedGens<E> {
    entries: Vec<(Letter, E)>,
}

impl<E: Clone> SignedGens<E> {
    pub fn new<T: TreeAction<Element = E>>(tree: &T, gens: &[E]) -> Result<Self> {
        let mut entries = Vec::with_capacity(2 * gens.len());
        for (i, g) in gens.iter().enumerate() {
            entries.push((Letter::pos(i), g.clone()));
            entries.push((Letter::neg(i), tree.inverse(g)?));
        }
        Ok(SignedGens { entries })
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &E)> {
        self.entries.iter().map(|(l, e)| (*l, e))
    }

    pub fn get(&self, l: Letter) -> &E {
        &self.entries[slot(l)].1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn slot(l: Letter) -> usize {
    2 * l.index + l.inverse as usize
}

/// A failed Nielsen condition with the first offending tuple in canonical
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `gens[first] = gens[second]⁻¹` (with `first == second` for a
    /// self-inverse generator).
    N1 {
        first: usize,
        second: usize,
    },
    N2 {
        x: Letter,
        y: Letter,
    },
    N3 {
        x: Letter,
        y: Letter,
        z: Letter,
    },
    N4 {
        x: Letter,
        y: Letter,
    },
}

/// Norms of `X^±` and of all products `xy` with `x ≠ y⁻¹`.
struct PairTable {
    letters: Vec<Letter>,
    norms: Vec<u64>,
    products: Vec<Vec<Option<u64>>>,
}

impl PairTable {
    fn new<T: TreeAction>(tree: &T, signed: &SignedGens<T::Element>) -> Result<Self> {
        let letters: Vec<Letter> = signed.iter().map(|(l, _)| l).collect();
        let norms = signed
            .iter()
            .map(|(_, e)| norm(tree, e))
            .collect::<Result<Vec<_>>>()?;
        let mut products = vec![vec![None; letters.len()]; letters.len()];
        for (i, &x) in letters.iter().enumerate() {
            for (j, &y) in letters.iter().enumerate() {
                if x != y.inv() {
                    let xy = tree.compose(signed.get(x), signed.get(y))?;
                    products[i][j] = Some(norm(tree, &xy)?);
                }
            }
        }
        Ok(PairTable {
            letters,
            norms,
            products,
        })
    }

    /// `2 δ(x⁻¹, y) = |x| + |y| - |xy|`.
    fn twice_delta(&self, i: usize, j: usize) -> Option<u64> {
        self.products[i][j].map(|p| self.norms[i] + self.norms[j] - p)
    }
}

pub fn check_n1<T: TreeAction>(tree: &T, gens: &[T::Element]) -> Result<Option<Violation>> {
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate().skip(i) {
            if norm(tree, g)? == norm(tree, h)? && tree.elements_equal(g, &tree.inverse(h)?)? {
                return Ok(Some(Violation::N1 {
                    first: i,
                    second: j,
                }));
            }
        }
    }
    Ok(None)
}

/// N2 in the form `δ(x⁻¹, y) <= min(|x|, |y|) / 2`.
pub fn check_n2<T: TreeAction>(tree: &T, gens: &[T::Element]) -> Result<Option<Violation>> {
    let signed = SignedGens::new(tree, gens)?;
    let t = PairTable::new(tree, &signed)?;
    Ok(first_n2(&t))
}

fn first_n2(t: &PairTable) -> Option<Violation> {
    for i in 0..t.letters.len() {
        for j in 0..t.letters.len() {
            if let Some(d2) = t.twice_delta(i, j) {
                if d2 > t.norms[i].min(t.norms[j]) {
                    return Some(Violation::N2 {
                        x: t.letters[i],
                        y: t.letters[j],
                    });
                }
            }
        }
    }
    None
}

/// N3 in the form `δ(x⁻¹, y) + δ(y⁻¹, z) < |y|`.
pub fn check_n3<T: TreeAction>(tree: &T, gens: &[T::Element]) -> Result<Option<Violation>> {
    let signed = SignedGens::new(tree, gens)?;
    let t = PairTable::new(tree, &signed)?;
    Ok(first_n3(&t))
}

fn first_n3(t: &PairTable) -> Option<Violation> {
    let n = t.letters.len();
    for i in 0..n {
        for j in 0..n {
            let Some(a) = t.twice_delta(i, j) else {
                continue;
            };
            for k in 0..n {
                let Some(b) = t.twice_delta(j, k) else {
                    continue;
                };
                if a + b >= 2 * t.norms[j] {
                    return Some(Violation::N3 {
                        x: t.letters[i],
                        y: t.letters[j],
                        z: t.letters[k],
                    });
                }
            }
        }
    }
    None
}

/// N4: `x <* xy` for all `x ≠ y⁻¹`.
pub fn check_n4<T: TreeAction>(tree: &T, gens: &[T::Element]) -> Result<Option<Violation>> {
    let signed = SignedGens::new(tree, gens)?;
    for (x, ex) in signed.iter() {
        let kx = star_key(tree, ex)?;
        for (y, ey) in signed.iter() {
            if x == y.inv() {
                continue;
            }
            let xy = tree.compose(ex, ey)?;
            let nxy = norm(tree, &xy)?;
            let less = match kx.norm.cmp(&nxy) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => kx < star_key(tree, &xy)?,
            };
            if !less {
                return Ok(Some(Violation::N4 { x, y }));
            }
        }
    }
    Ok(None)
}

/// N1, N2 and N3 together, in that order.
pub fn check_n_reduced<T: TreeAction>(tree: &T, gens: &[T::Element]) -> Result<Option<Violation>> {
    if let Some(v) = check_n1(tree, gens)? {
        return Ok(Some(v));
    }
    let signed = SignedGens::new(tree, gens)?;
    let t = PairTable::new(tree, &signed)?;
    Ok(first_n2(&t).or_else(|| first_n3(&t)))
}

/// Evaluates a word over `gens`.
pub fn evaluate<T: TreeAction>(tree: &T, gens: &[T::Element], word: &Word) -> Result<T::Element> {
    let mut acc = tree.identity();
    for l in word.letters() {
        let g = if l.inverse {
            tree.inverse(&gens[l.index])?
        } else {
            gens[l.index].clone()
        };
        acc = tree.compose(&acc, &g)?;
    }
    Ok(acc)
}

/// Compares both sides of `|a₁⋯aₙ| = Σ|aᵢ| - 2 Σ δ(aᵢ⁻¹, aᵢ₊₁)`.
///
/// Meaningful when `gens` is N-reduced and `word` is reduced.
pub fn word_norm_formula_check<T: TreeAction>(
    tree: &T,
    gens: &[T::Element],
    word: &Word,
) -> Result<bool> {
    let signed = SignedGens::new(tree, gens)?;
    let letters = word.letters();
    let mut rhs: i64 = 0;
    for l in letters {
        rhs += norm(tree, signed.get(*l))? as i64;
    }
    for pair in letters.windows(2) {
        let ai_inv = signed.get(pair[0].inv());
        rhs -= 2 * delta(tree, ai_inv, signed.get(pair[1]))? as i64;
    }
    let lhs = norm(tree, &evaluate(tree, gens, word)?)? as i64;
    Ok(lhs == rhs)
}

/// Follows `steps` from `origin`.
pub fn follow<T: TreeAction>(
    tree: &T,
    origin: &T::Vertex,
    steps: &[T::Label],
) -> Result<T::Vertex> {
    let mut v = origin.clone();
    for &s in steps {
        v = tree.step(&v, s)?;
    }
    Ok(v)
}

/// The vertex of `[v, w]` at distance `k` from `v`.
pub fn point_on_path<T: TreeAction>(
    tree: &T,
    v: &T::Vertex,
    w: &T::Vertex,
    k: u64,
) -> Result<T::Vertex> {
    let p = tree.path(v, w)?;
    follow(tree, v, &p.steps[..(k as usize).min(p.len())])
}

/// Vertices of the ball `B(center, radius)` in breadth-first order, each
/// with the index of its parent in the list.
pub fn ball<T: TreeAction>(
    tree: &T,
    center: &T::Vertex,
    radius: u64,
) -> Result<Vec<(T::Vertex, Option<usize>)>> {
    let mut out = vec![(center.clone(), None)];
    let mut seen: HashSet<T::Vertex> = HashSet::from([center.clone()]);
    let mut queue = VecDeque::from([(0usize, 0u64)]);
    while let Some((idx, depth)) = queue.pop_front() {
        if depth == radius {
            continue;
        }
        let v = out[idx].0.clone();
        for (_, w) in tree.neighbors(&v)? {
            if seen.insert(w.clone()) {
                out.push((w, Some(idx)));
                queue.push_back((out.len() - 1, depth + 1));
            }
        }
    }
    Ok(out)
}
