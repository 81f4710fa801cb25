//! Nielsen reduction with elliptic detection, strong reduction and subgroup
//! equality.
//!
//! [`Reducer`] runs the reduction loop one iteration at a time:
//!
//! 1. stop if some generator is a nontrivial elliptic;
//! 2. drop a generator whose inverse is also present;
//! 3. replace `x` by `xy` when `xy <* x`, for `x, y ∈ X^±`, `x ≠ y⁻¹`;
//! 4. otherwise stop with a free basis.
//!
//! Every generator carries its word over the caller's original list.

use std::cmp::Ordering;
use std::fmt;

use log::{debug, warn};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::treeaction::{check_n1, check_n4, is_elliptic, norm, star_key, StarKey, TreeAction};
use crate::word::{Letter, Word};

/// A group element together with a word over the original generators that
/// evaluates to it.
#[derive(Clone, Debug)]
pub struct TrackedGen<E> {
    pub element: E,
    pub word: Word,
}

impl<E> TrackedGen<E> {
    pub fn new(element: E, word: Word) -> Self {
        TrackedGen { element, word }
    }
}

/// Wraps each element of `gens` with the one-letter word naming it.
pub fn track<E: Clone>(gens: &[E]) -> Vec<TrackedGen<E>> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| TrackedGen::new(g.clone(), Word::letter(Letter::pos(i))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flag {
    PurelyHyperbolicFreeBasis,
    ContainsElliptic,
}

impl Flag {
    pub fn is_free(self) -> bool {
        self == Flag::PurelyHyperbolicFreeBasis
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_free() { "True" } else { "False" })
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome<E> {
    pub flag: Flag,
    pub basis: Vec<TrackedGen<E>>,
    /// The elliptic generator when `flag` is [`Flag::ContainsElliptic`].
    pub witness: Option<TrackedGen<E>>,
    pub iterations: usize,
}

impl<E: Clone> ReductionOutcome<E> {
    pub fn elements(&self) -> Vec<E> {
        self.basis.iter().map(|g| g.element.clone()).collect()
    }
}

/// What a single iteration did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Removed generator `slot`, which was the identity.
    DroppedIdentity {
        slot: usize,
    },
    /// Removed generator `removed`, the inverse of `kept`.
    DroppedInverse {
        removed: usize,
        kept: usize,
    },
    /// The generator carrying `x` became `xy` (or its inverse, if `x` is
    /// an inverse letter).
    Replaced {
        x: Letter,
        y: Letter,
    },
    Finished(Flag),
}

struct Slot<T: TreeAction> {
    gen: TrackedGen<T::Element>,
    inverse: T::Element,
    norm: u64,
    key: Option<StarKey<T::Label>>,
    elliptic: Option<bool>,
}

impl<T: TreeAction> Slot<T> {
    fn new(tree: &T, gen: TrackedGen<T::Element>) -> Result<Self> {
        Ok(Slot {
            inverse: tree.inverse(&gen.element)?,
            norm: norm(tree, &gen.element)?,
            gen,
            key: None,
            elliptic: None,
        })
    }

    fn element(&self, inverse: bool) -> &T::Element {
        if inverse {
            &self.inverse
        } else {
            &self.gen.element
        }
    }

    /// `≤*` key; identical for `x` and `x⁻¹`.
    fn key(&mut self, tree: &T) -> Result<&StarKey<T::Label>> {
        if self.key.is_none() {
            self.key = Some(star_key(tree, &self.gen.element)?);
        }
        Ok(self.key.as_ref().unwrap())
    }
}

/// Stepwise reduction state.
pub struct Reducer<'t, T: TreeAction> {
    tree: &'t T,
    slots: Vec<Slot<T>>,
    iterations: usize,
    done: Option<Flag>,
    witness: Option<TrackedGen<T::Element>>,
}

impl<'t, T: TreeAction> Reducer<'t, T> {
    /// Identity entries are dropped with a warning.
    pub fn new(tree: &'t T, gens: Vec<TrackedGen<T::Element>>) -> Result<Self> {
        let mut slots = Vec::with_capacity(gens.len());
        for g in gens {
            if tree.is_identity(&g.element) {
                warn!("dropping identity generator {}", g.word);
                continue;
            }
            slots.push(Slot::new(tree, g)?);
        }
        Ok(Reducer {
            tree,
            slots,
            iterations: 0,
            done: None,
            witness: None,
        })
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn is_finished(&self) -> bool {
        self.done.is_some()
    }

    pub fn elements(&self) -> Vec<T::Element> {
        self.slots.iter().map(|s| s.gen.element.clone()).collect()
    }

    pub fn generators(&self) -> Vec<TrackedGen<T::Element>> {
        self.slots.iter().map(|s| s.gen.clone()).collect()
    }

    /// Current norms, in slot order.
    pub fn norms(&self) -> Vec<u64> {
        self.slots.iter().map(|s| s.norm).collect()
    }

    /// Current `≤*` keys, in slot order.
    pub fn keys(&mut self) -> Result<Vec<StarKey<T::Label>>> {
        let tree = self.tree;
        self.slots
            .iter_mut()
            .map(|s| s.key(tree).cloned())
            .collect()
    }

    /// Runs one iteration. Returns `Finished` forever once done.
    pub fn step(&mut self) -> Result<Step> {
        if let Some(flag) = self.done {
            return Ok(Step::Finished(flag));
        }
        match self.iterate() {
            Ok(step) => {
                self.iterations += 1;
                debug!("iteration {}: {step:?}", self.iterations);
                Ok(step)
            }
            Err(e) => Err(self.abort(e)),
        }
    }

    fn abort(&self, e: Error) -> Error {
        if matches!(e, Error::ReductionAborted { .. }) {
            return e;
        }
        Error::ReductionAborted {
            iteration: self.iterations,
            words: self.slots.iter().map(|s| s.gen.word.clone()).collect(),
            source: Box::new(e),
        }
    }

    fn iterate(&mut self) -> Result<Step> {
        let tree = self.tree;
        // (i) nontrivial elliptics
        for s in &mut self.slots {
            if tree.is_identity(&s.gen.element) {
                continue;
            }
            let elliptic = match s.elliptic {
                Some(e) => e,
                None => *s.elliptic.insert(is_elliptic(tree, &s.gen.element)?),
            };
            if elliptic {
                self.done = Some(Flag::ContainsElliptic);
                self.witness = Some(s.gen.clone());
                return Ok(Step::Finished(Flag::ContainsElliptic));
            }
        }
        // (ii) x and x⁻¹ both present
        for i in 0..self.slots.len() {
            if tree.is_identity(&self.slots[i].gen.element) {
                self.slots.remove(i);
                return Ok(Step::DroppedIdentity { slot: i });
            }
            for j in i + 1..self.slots.len() {
                if self.slots[i].norm == self.slots[j].norm
                    && tree.elements_equal(&self.slots[j].gen.element, &self.slots[i].inverse)?
                {
                    self.slots.remove(j);
                    return Ok(Step::DroppedInverse {
                        removed: j,
                        kept: i,
                    });
                }
            }
        }
        // (iii) first x, y with xy <* x
        let letters: Vec<Letter> = Letter::all(self.slots.len()).collect();
        for &x in &letters {
            for &y in &letters {
                if x == y.inv() {
                    continue;
                }
                let ex = self.slots[x.index].element(x.inverse);
                let ey = self.slots[y.index].element(y.inverse);
                let xy = tree.compose(ex, ey)?;
                let nxy = norm(tree, &xy)?;
                let better = match nxy.cmp(&self.slots[x.index].norm) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let kxy = star_key(tree, &xy)?;
                        kxy < *self.slots[x.index].key(tree)?
                    }
                };
                if better {
                    self.replace(x, y, xy, nxy)?;
                    return Ok(Step::Replaced { x, y });
                }
            }
        }
        self.done = Some(Flag::PurelyHyperbolicFreeBasis);
        Ok(Step::Finished(Flag::PurelyHyperbolicFreeBasis))
    }

    fn replace(&mut self, x: Letter, y: Letter, xy: T::Element, nxy: u64) -> Result<()> {
        let word_of = |l: Letter, slots: &[Slot<T>]| {
            let w = &slots[l.index].gen.word;
            if l.inverse {
                w.inverse()
            } else {
                w.clone()
            }
        };
        let word = word_of(x, &self.slots).concat(&word_of(y, &self.slots));
        let (element, word) = if x.inverse {
            (self.tree.inverse(&xy)?, word.inverse())
        } else {
            (xy, word)
        };
        let mut slot = Slot::new(self.tree, TrackedGen::new(element, word))?;
        debug_assert_eq!(slot.norm, nxy);
        slot.norm = nxy;
        self.slots[x.index] = slot;
        Ok(())
    }

    /// Runs to completion.
    pub fn run(mut self) -> Result<ReductionOutcome<T::Element>> {
        loop {
            if let Step::Finished(flag) = self.step()? {
                debug!("reduction finished after {} iterations", self.iterations);
                return Ok(ReductionOutcome {
                    flag,
                    basis: self.slots.into_iter().map(|s| s.gen).collect(),
                    witness: self.witness,
                    iterations: self.iterations,
                });
            }
        }
    }
}

/// Reduces `gens`, tracking words over `gens` itself.
pub fn reduce<T: TreeAction>(
    tree: &T,
    gens: &[T::Element],
) -> Result<ReductionOutcome<T::Element>> {
    Reducer::new(tree, track(gens))?.run()
}

pub fn reduce_tracked<T: TreeAction>(
    tree: &T,
    gens: Vec<TrackedGen<T::Element>>,
) -> Result<ReductionOutcome<T::Element>> {
    Reducer::new(tree, gens)?.run()
}

/// N1, no nontrivial elliptics, and N4.
pub fn is_strongly_reduced<T: TreeAction>(tree: &T, gens: &[T::Element]) -> Result<bool> {
    if check_n1(tree, gens)?.is_some() {
        return Ok(false);
    }
    for g in gens {
        if is_elliptic(tree, g)? {
            return Ok(false);
        }
    }
    Ok(check_n4(tree, gens)?.is_none())
}

/// Whether `⟨xs⟩ = ⟨ys⟩`, by comparing reduced bases up to inversion.
pub fn groups_equal<T: TreeAction>(tree: &T, xs: &[T::Element], ys: &[T::Element]) -> Result<bool> {
    let (a, b) = (reduce(tree, xs)?, reduce(tree, ys)?);
    if !a.flag.is_free() || !b.flag.is_free() {
        return Err(Error::EllipticEncountered);
    }
    same_signed_set(tree, &a.elements(), &b.elements())
}

/// `X^± = Y^±` as sets.
pub fn same_signed_set<T: TreeAction>(
    tree: &T,
    xs: &[T::Element],
    ys: &[T::Element],
) -> Result<bool> {
    if xs.len() != ys.len() {
        return Ok(false);
    }
    let signed = |gens: &[T::Element]| -> Result<Vec<T::Element>> {
        let mut out = Vec::with_capacity(2 * gens.len());
        for g in gens {
            out.push(g.clone());
            out.push(tree.inverse(g)?);
        }
        Ok(out)
    };
    let (sx, sy) = (signed(xs)?, signed(ys)?);
    for (have, want) in [(&sx, &sy), (&sy, &sx)] {
        for g in have {
            let mut found = false;
            for h in want {
                if tree.elements_equal(g, h)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
