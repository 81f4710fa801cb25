//! The free group `F_k` acting on its Cayley tree by left multiplication.
//!
//! Vertices and group elements are both reduced words; the edge from `v`
//! labelled `a` goes to `v a`. Norms are word lengths, so every derived
//! quantity can be checked against plain string algebra.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::path::TreePath;
use crate::treeaction::TreeAction;
use crate::word::{Letter, Word};

/// `F_rank` on its `2·rank`-regular Cayley tree.
#[derive(Clone, Copy, Debug)]
pub struct CayleyTree {
    rank: usize,
}

impl CayleyTree {
    pub fn new(rank: usize) -> Self {
        CayleyTree { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.index >= self.rank) {
            Some(l) => Err(Error::PreconditionViolated(format!(
                "letter x{} outside F_{}",
                l.index + 1,
                self.rank
            ))),
            None => Ok(()),
        }
    }

    /// A uniformly random reduced word of length exactly `len`.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(len);
        while out.len() < len {
            let l = Letter::new(rng.gen_range(0..self.rank), rng.gen());
            if out.last() != Some(&l.inv()) {
                out.push(l);
            }
        }
        Word::reduced(out)
    }
}

impl TreeAction for CayleyTree {
    type Element = Word;
    type Vertex = Word;
    type Label = Letter;

    fn base_vertex(&self) -> Word {
        Word::empty()
    }

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn compose(&self, g: &Word, h: &Word) -> Result<Word> {
        Ok(g.concat(h))
    }

    fn inverse(&self, g: &Word) -> Result<Word> {
        Ok(g.inverse())
    }

    fn is_identity(&self, g: &Word) -> bool {
        g.is_empty()
    }

    fn elements_equal(&self, g: &Word, h: &Word) -> Result<bool> {
        Ok(g == h)
    }

    fn act(&self, g: &Word, v: &Word) -> Result<Word> {
        Ok(g.concat(v))
    }

    fn distance(&self, v: &Word, w: &Word) -> Result<u64> {
        Ok(v.inverse().concat(w).len() as u64)
    }

    fn path(&self, v: &Word, w: &Word) -> Result<TreePath<Word, Letter>> {
        Ok(TreePath {
            origin: v.clone(),
            steps: v.inverse().concat(w).letters().to_vec(),
        })
    }

    fn neighbors(&self, v: &Word) -> Result<Vec<(Letter, Word)>> {
        Ok(Letter::all(self.rank)
            .map(|l| (l, v.concat(&Word::letter(l))))
            .collect())
    }

    fn step(&self, v: &Word, label: Letter) -> Result<Word> {
        if label.index >= self.rank {
            return Err(Error::PreconditionViolated(format!(
                "no edge labelled x{}",
                label.index + 1
            )));
        }
        Ok(v.concat(&Word::letter(label)))
    }

    fn displacement(&self, g: &Word) -> Result<u64> {
        self.check(g)?;
        Ok(g.len() as u64)
    }
}

/// Applies `steps` random Nielsen transformations to `basis`: inversion of
/// one generator, or replacement of `g` by `g^±1 h^±1` or `h^±1 g^±1` for
/// another generator `h`. Inverse pairs, if any, are removed first.
pub fn scramble<R: Rng + ?Sized>(basis: &[Word], rng: &mut R, steps: usize) -> Vec<Word> {
    let mut gens: Vec<Word> = Vec::with_capacity(basis.len());
    for g in basis {
        if !gens.contains(&g.inverse()) {
            gens.push(g.clone());
        }
    }
    if gens.is_empty() {
        return gens;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..gens.len());
        if gens.len() == 1 || rng.gen_bool(0.2) {
            gens[i] = gens[i].inverse();
            continue;
        }
        let mut j = rng.gen_range(0..gens.len() - 1);
        if j >= i {
            j += 1;
        }
        let g = if rng.gen() {
            gens[i].inverse()
        } else {
            gens[i].clone()
        };
        let h = if rng.gen() {
            gens[j].inverse()
        } else {
            gens[j].clone()
        };
        gens[i] = if rng.gen() {
            g.concat(&h)
        } else {
            h.concat(&g)
        };
    }
    gens
}

pub fn scramble_seeded(basis: &[Word], seed: u64, steps: usize) -> Vec<Word> {
    scramble(basis, &mut ChaCha8Rng::seed_from_u64(seed), steps)
}

/// The folded core graph of a finitely generated subgroup of a free group.
/// Accepts exactly the reduced words lying in the subgroup.
#[derive(Clone, Debug)]
pub struct StallingsGraph {
    base: usize,
    edges: HashMap<(usize, Letter), usize>,
    vertices: usize,
}

impl StallingsGraph {
    pub fn new(gens: &[Word]) -> Self {
        let mut edges: Vec<(usize, Letter, usize)> = Vec::new();
        let mut count = 1;
        for g in gens.iter().filter(|g| !g.is_empty()) {
            let mut cur = 0;
            for (i, &l) in g.letters().iter().enumerate() {
                let next = if i + 1 == g.len() {
                    0
                } else {
                    count += 1;
                    count - 1
                };
                edges.push((cur, l, next));
                cur = next;
            }
        }
        let mut uf = UnionFind::new(count);
        loop {
            let mut map: HashMap<(usize, Letter), usize> = HashMap::new();
            let mut merged = false;
            for &(a, l, b) in &edges {
                for (src, lab, dst) in [(a, l, b), (b, l.inv(), a)] {
                    let (src, dst) = (uf.find(src), uf.find(dst));
                    match map.get(&(src, lab)).copied() {
                        Some(d) if uf.find(d) != dst => {
                            uf.union(d, dst);
                            merged = true;
                        }
                        Some(_) => {}
                        None => {
                            map.insert((src, lab), dst);
                        }
                    }
                }
            }
            if !merged {
                let edges = map
                    .into_iter()
                    .map(|((s, l), d)| ((uf.find(s), l), uf.find(d)))
                    .collect();
                let mut roots: Vec<usize> = (0..count).map(|v| uf.find(v)).collect();
                roots.sort_unstable();
                roots.dedup();
                return StallingsGraph {
                    base: uf.find(0),
                    edges,
                    vertices: roots.len(),
                };
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut cur = self.base;
        for l in w.letters() {
            match self.edges.get(&(cur, *l)) {
                Some(&n) => cur = n,
                None => return false,
            }
        }
        cur == self.base
    }

    /// Rank of the subgroup: `E - V + 1` of the folded graph.
    pub fn rank(&self) -> usize {
        self.edges.len() / 2 + 1 - self.vertices
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}
