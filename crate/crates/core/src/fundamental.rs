//! Fundamental systems, the fundamental domain `Γ(G)`, orbit
//! representatives and constructive membership.
//!
//! `Γ(G)` is the set of vertices `w` with `[v₀, w] < [v₀, x w]` for every
//! `x ∈ X^±`; for a strongly reduced basis it meets every orbit exactly once.
//! Axis geometry is reported in the doubled metric (half-edges), so the
//! points at distance `l(g)/2` along an axis are exact integers.

use std::cmp::Ordering;

use log::debug;

use crate::error::{Error, Result};
use crate::nielsen::{is_strongly_reduced, reduce, Flag, ReductionOutcome, TrackedGen};
use crate::treeaction::{norm, point_on_path, translation_length, PathOf, TreeAction};
use crate::word::{Letter, Word};

/// A window of the axis of `g`: the path from `a = proj(v₀)` to `g a`.
#[derive(Clone, Debug)]
pub struct AxisSegment<T: TreeAction> {
    pub carrier: PathOf<T>,
    /// Doubled-metric position of `proj(v₀)` on the carrier.
    pub anchor: u64,
    /// `l(g)` in the doubled metric, i.e. the radius `l(g)/2` of `U⁰_g`.
    pub half_length: u64,
}

fn hyperbolic_length<T: TreeAction>(tree: &T, g: &T::Element) -> Result<u64> {
    match translation_length(tree, g)? {
        0 => Err(Error::NotHyperbolic),
        l => Ok(l),
    }
}

pub fn axis_window<T: TreeAction>(tree: &T, g: &T::Element) -> Result<AxisSegment<T>> {
    let l = hyperbolic_length(tree, g)?;
    let base = tree.base_vertex();
    let gv = tree.act(g, &base)?;
    let n = norm(tree, g)?;
    let a = point_on_path(tree, &base, &gv, (n - l) / 2)?;
    let ga = tree.act(g, &a)?;
    Ok(AxisSegment {
        carrier: tree.path(&a, &ga)?,
        anchor: 0,
        half_length: l,
    })
}

/// Nearest point of the axis of `g` to `w`.
pub fn project_to_axis<T: TreeAction>(
    tree: &T,
    g: &T::Element,
    w: &T::Vertex,
) -> Result<T::Vertex> {
    let l = hyperbolic_length(tree, g)?;
    project_with_length(tree, g, l, w)
}

fn project_with_length<T: TreeAction>(
    tree: &T,
    g: &T::Element,
    l: u64,
    w: &T::Vertex,
) -> Result<T::Vertex> {
    let gw = tree.act(g, w)?;
    let d = tree.distance(w, &gw)?;
    point_on_path(tree, w, &gw, (d - l) / 2)
}

/// Vertices of `[v₀, w]` lying on the axis of `g`, in path order.
pub fn axis_intersection<T: TreeAction>(
    tree: &T,
    g: &T::Element,
    w: &T::Vertex,
) -> Result<Vec<T::Vertex>> {
    let l = hyperbolic_length(tree, g)?;
    let base = tree.base_vertex();
    let path = tree.path(&base, w)?;
    let mut out = Vec::new();
    let mut cur = base;
    for k in 0..=path.len() {
        if tree.distance(&cur, &tree.act(g, &cur)?)? == l {
            out.push(cur.clone());
        }
        if k < path.len() {
            cur = tree.step(&cur, path.steps[k])?;
        }
    }
    Ok(out)
}

/// Whether `proj(w)` lies in `U⁻_g ∪ U⁺_g`, the part of the axis at
/// distance at least `l(g)/2` from `proj(v₀)` minus the closed end `u⁺_g`.
///
/// When `l(g)` is odd the endpoints are edge midpoints, which no vertex
/// hits, so only the strict inequality matters.
pub fn in_u_pm<T: TreeAction>(tree: &T, g: &T::Element, w: &T::Vertex) -> Result<bool> {
    let l = hyperbolic_length(tree, g)?;
    let base = tree.base_vertex();
    let x = project_with_length(tree, g, l, &base)?;
    let y = project_with_length(tree, g, l, w)?;
    let twice = 2 * tree.distance(&x, &y)?;
    match twice.cmp(&l) {
        Ordering::Less => Ok(false),
        Ordering::Greater => Ok(true),
        Ordering::Equal => {
            // y is one of u±; the other lies on the opposite side of x.
            let gx = tree.act(g, &x)?;
            let ginv = tree.inverse(g)?;
            let ginvx = tree.act(&ginv, &x)?;
            let far = if tree.distance(&gx, &y)? < tree.distance(&ginvx, &y)? {
                ginvx
            } else {
                gx
            };
            let other = point_on_path(tree, &x, &far, l / 2)?;
            Ok(tree.compare_from_base(&y, &other)? == Ordering::Greater)
        }
    }
}

/// Result of the pairwise path test for a fundamental system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemCheck {
    Admits,
    /// `[v₀, h v₀] < [v₀, g h v₀]` fails.
    Fails {
        g: Letter,
        h: Letter,
    },
}

impl SystemCheck {
    pub fn admits(self) -> bool {
        self == SystemCheck::Admits
    }
}

/// Decides whether `gens` admits a fundamental system via the finite test
/// `[v₀, h v₀] < [v₀, g h v₀]` for all `g, h ∈ X^±` with `g ≠ h⁻¹`.
pub fn admits_fundamental_system<T: TreeAction>(
    tree: &T,
    gens: &[T::Element],
) -> Result<SystemCheck> {
    if let Some(v) = crate::treeaction::check_n1(tree, gens)? {
        return Err(Error::PreconditionViolated(format!("N1 fails: {v:?}")));
    }
    for (i, g) in gens.iter().enumerate() {
        if translation_length(tree, g)? == 0 {
            return Err(Error::PreconditionViolated(format!(
                "generator {} is elliptic",
                i + 1
            )));
        }
    }
    let base = tree.base_vertex();
    let signed = crate::treeaction::SignedGens::new(tree, gens)?;
    let images: Vec<T::Vertex> = signed
        .iter()
        .map(|(_, e)| tree.act(e, &base))
        .collect::<Result<_>>()?;
    for (g, eg) in signed.iter() {
        for (hi, (h, _)) in signed.iter().enumerate() {
            if g == h.inv() {
                continue;
            }
            let ghv = tree.act(eg, &images[hi])?;
            if tree.compare_from_base(&images[hi], &ghv)? != Ordering::Less {
                return Ok(SystemCheck::Fails { g, h });
            }
        }
    }
    Ok(SystemCheck::Admits)
}

/// A strongly N-reduced basis with words over some original generator list.
#[derive(Clone, Debug)]
pub struct ReducedBasis<E> {
    gens: Vec<TrackedGen<E>>,
    signed: Vec<(Letter, TrackedGen<E>)>,
}

impl<E: Clone> ReducedBasis<E> {
    /// Checks strong reduction.
    pub fn new<T: TreeAction<Element = E>>(tree: &T, gens: Vec<TrackedGen<E>>) -> Result<Self> {
        let elements: Vec<E> = gens.iter().map(|g| g.element.clone()).collect();
        if !is_strongly_reduced(tree, &elements)? {
            return Err(Error::PreconditionViolated(
                "basis is not strongly N-reduced".into(),
            ));
        }
        Self::unchecked(tree, gens)
    }

    /// Takes the basis of a successful reduction; fails if it found an
    /// elliptic.
    pub fn from_outcome<T: TreeAction<Element = E>>(
        tree: &T,
        outcome: ReductionOutcome<E>,
    ) -> Result<Self> {
        if outcome.flag != Flag::PurelyHyperbolicFreeBasis {
            return Err(Error::EllipticEncountered);
        }
        Self::unchecked(tree, outcome.basis)
    }

    fn unchecked<T: TreeAction<Element = E>>(tree: &T, gens: Vec<TrackedGen<E>>) -> Result<Self> {
        let mut signed = Vec::with_capacity(2 * gens.len());
        for (i, g) in gens.iter().enumerate() {
            signed.push((Letter::pos(i), g.clone()));
            signed.push((
                Letter::neg(i),
                TrackedGen::new(tree.inverse(&g.element)?, g.word.inverse()),
            ));
        }
        Ok(ReducedBasis { gens, signed })
    }

    pub fn generators(&self) -> &[TrackedGen<E>] {
        &self.gens
    }

    pub fn elements(&self) -> Vec<E> {
        self.gens.iter().map(|g| g.element.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `X^±` in canonical order.
    pub fn signed(&self) -> impl Iterator<Item = (Letter, &TrackedGen<E>)> {
        self.signed.iter().map(|(l, g)| (*l, g))
    }
}

/// `[v₀, w] < [v₀, x w]` for all `x ∈ X^±`.
pub fn in_fundamental_domain<T: TreeAction>(
    tree: &T,
    basis: &ReducedBasis<T::Element>,
    w: &T::Vertex,
) -> Result<bool> {
    for (_, x) in basis.signed() {
        let xw = tree.act(&x.element, w)?;
        if tree.compare_from_base(w, &xw)? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The element `g` of `G` with `g w ∈ Γ(G)`, with its word over the
/// original generators.
pub fn to_fundamental_domain<T: TreeAction>(
    tree: &T,
    basis: &ReducedBasis<T::Element>,
    w: &T::Vertex,
) -> Result<TrackedGen<T::Element>> {
    let mut g = TrackedGen::new(tree.identity(), Word::empty());
    let mut cur = w.clone();
    let mut rounds = 0usize;
    'outer: loop {
        for (_, x) in basis.signed() {
            let xw = tree.act(&x.element, &cur)?;
            if tree.compare_from_base(&xw, &cur)? == Ordering::Less {
                g = TrackedGen::new(
                    tree.compose(&x.element, &g.element)?,
                    x.word.concat(&g.word),
                );
                cur = xw;
                rounds += 1;
                continue 'outer;
            }
        }
        debug!("orbit representative after {rounds} moves");
        return Ok(g);
    }
}

/// Constructive membership against a reduced basis: `Some(word)` over the
/// original generators if `g ∈ G`.
pub fn membership<T: TreeAction>(
    tree: &T,
    basis: &ReducedBasis<T::Element>,
    g: &T::Element,
) -> Result<Option<Word>> {
    let gv = tree.act(g, &tree.base_vertex())?;
    let h = to_fundamental_domain(tree, basis, &gv)?;
    let hinv = tree.inverse(&h.element)?;
    Ok(if tree.elements_equal(g, &hinv)? {
        Some(h.word.inverse())
    } else {
        None
    })
}

/// Reduces a generating set once and answers membership queries over it.
pub struct MembershipSolver<'t, T: TreeAction> {
    tree: &'t T,
    basis: ReducedBasis<T::Element>,
    iterations: usize,
}

impl<'t, T: TreeAction> MembershipSolver<'t, T> {
    /// Fails with [`Error::EllipticEncountered`] if `gens` is not purely
    /// hyperbolic.
    pub fn new(tree: &'t T, gens: &[T::Element]) -> Result<Self> {
        let outcome = reduce(tree, gens)?;
        let iterations = outcome.iterations;
        Ok(MembershipSolver {
            tree,
            basis: ReducedBasis::from_outcome(tree, outcome)?,
            iterations,
        })
    }

    pub fn basis(&self) -> &ReducedBasis<T::Element> {
        &self.basis
    }

    pub fn reduction_iterations(&self) -> usize {
        self.iterations
    }

    pub fn solve(&self, g: &T::Element) -> Result<Option<Word>> {
        membership(self.tree, &self.basis, g)
    }

    pub fn orbit_representative(&self, w: &T::Vertex) -> Result<TrackedGen<T::Element>> {
        to_fundamental_domain(self.tree, &self.basis, w)
    }
}

/// Checks `proj_{γ(g)}(γ(h)) ⊆ U⁰_g` on a window of each `γ(h)`: every
/// projected vertex is within doubled distance `l(g)` of `proj_{γ(g)}(v₀)`.
pub fn ping_pong_holds<T: TreeAction>(tree: &T, gens: &[T::Element], window: u32) -> Result<bool> {
    let base = tree.base_vertex();
    for (i, g) in gens.iter().enumerate() {
        let lg = hyperbolic_length(tree, g)?;
        let anchor = project_with_length(tree, g, lg, &base)?;
        for (j, h) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            for v in axis_vertices(tree, h, window)? {
                let y = project_with_length(tree, g, lg, &v)?;
                if 2 * tree.distance(&anchor, &y)? > lg {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Vertices of `h^k [a, h a]` for `|k| <= window`.
pub fn axis_vertices<T: TreeAction>(
    tree: &T,
    h: &T::Element,
    window: u32,
) -> Result<Vec<T::Vertex>> {
    let seg = axis_window(tree, h)?;
    let mut segment = vec![seg.carrier.origin.clone()];
    for s in &seg.carrier.steps {
        let next = tree.step(segment.last().unwrap(), *s)?;
        segment.push(next);
    }
    let hinv = tree.inverse(h)?;
    let mut out = segment.clone();
    for e in [h, &hinv] {
        let mut cur = segment.clone();
        for _ in 0..window {
            cur = cur.iter().map(|v| tree.act(e, v)).collect::<Result<_>>()?;
            out.extend(cur.iter().cloned());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bttree::{BruhatTitsTree, Vertex};
    use crate::cayley::CayleyTree;
    use crate::nielsen::track;
    use crate::padic::PadicContext;
    use crate::projlinear::ProjMatrix;
    use crate::treeaction::evaluate;

    fn w(v: &[i64]) -> Word {
        Word::from_signed(v).unwrap()
    }

    fn bt(p: u64) -> BruhatTitsTree {
        BruhatTitsTree::new(PadicContext::new(p, 60).unwrap())
    }

    fn m(t: &BruhatTitsTree, rows: [[&str; 2]; 2]) -> ProjMatrix {
        ProjMatrix::from_strings(t.context(), &rows).unwrap()
    }

    #[test]
    fn axis_of_diagonal() {
        let t = bt(5);
        let g = m(&t, [["5", "0"], ["0", "1"]]);
        let seg = axis_window(&t, &g).unwrap();
        assert_eq!(seg.carrier.origin, Vertex::base());
        assert_eq!(seg.carrier.steps.len(), 1);
        assert_eq!(seg.half_length, 1);
        assert_eq!(
            project_to_axis(&t, &g, &Vertex::base()).unwrap(),
            Vertex::base()
        );
        let swap = m(&t, [["0", "1"], ["1", "0"]]);
        assert!(matches!(axis_window(&t, &swap), Err(Error::NotHyperbolic)));
    }

    #[test]
    fn projection_off_the_apartment() {
        let t = bt(5);
        let g = m(&t, [["5", "0"], ["0", "1"]]);
        let w = t.parse_vertex(2, "5").unwrap();
        let y = project_to_axis(&t, &g, &w).unwrap();
        // Brute force over a stretch of the axis.
        let best = axis_vertices(&t, &g, 4)
            .unwrap()
            .into_iter()
            .min_by_key(|v| t.distance(v, &w).unwrap())
            .unwrap();
        assert_eq!(y, best);
        assert_eq!(y, t.parse_vertex(1, "0").unwrap());
    }

    #[test]
    fn carrier_is_in_min_set() {
        let t = bt(3);
        let g = m(&t, [["1/3", "1"], ["1", "2"]]);
        let l = translation_length(&t, &g).unwrap();
        let seg = axis_window(&t, &g).unwrap();
        let mut v = seg.carrier.origin.clone();
        for s in &seg.carrier.steps {
            assert_eq!(t.distance(&v, &t.act(&g, &v).unwrap()).unwrap(), l);
            v = t.step(&v, *s).unwrap();
        }
        assert_eq!(v, t.act(&g, &seg.carrier.origin).unwrap());
    }

    #[test]
    fn fundamental_system_examples() {
        let c = CayleyTree::new(2);
        assert!(admits_fundamental_system(&c, &[w(&[1]), w(&[2])])
            .unwrap()
            .admits());
        assert!(admits_fundamental_system(&c, &[w(&[1, 2, 1])])
            .unwrap()
            .admits());
        let bad = admits_fundamental_system(&c, &[w(&[1]), w(&[1, 1, 2])]).unwrap();
        assert!(!bad.admits());
        assert!(matches!(
            admits_fundamental_system(&c, &[w(&[1]), w(&[-1])]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn orbit_representatives_on_cayley() {
        let c = CayleyTree::new(2);
        let gens = vec![w(&[1, 1]), w(&[2, 1, 2])];
        let basis = ReducedBasis::new(&c, track(&gens)).unwrap();
        assert!(in_fundamental_domain(&c, &basis, &Word::empty()).unwrap());
        assert!(!in_fundamental_domain(&c, &basis, &gens[0]).unwrap());
        let h = w(&[1, 1, 2, 1, 2, 1, 1]);
        let target = c.act(&h, &w(&[1])).unwrap();
        let g = to_fundamental_domain(&c, &basis, &target).unwrap();
        let rep = c.act(&g.element, &target).unwrap();
        assert!(in_fundamental_domain(&c, &basis, &rep).unwrap());
        assert_eq!(evaluate(&c, &gens, &g.word).unwrap(), g.element);
        assert_eq!(membership(&c, &basis, &h).unwrap(), Some(w(&[1, 2, 1])));
        assert_eq!(membership(&c, &basis, &w(&[1])).unwrap(), None);
        assert_eq!(
            membership(&c, &basis, &Word::empty()).unwrap(),
            Some(Word::empty())
        );
    }

    #[test]
    fn membership_on_bruhat_tits() {
        let t = bt(5);
        let g = m(&t, [["5", "0"], ["0", "1"]]);
        let g2 = m(&t, [["25", "0"], ["0", "1"]]);
        let h = m(&t, [["1", "1/25"], ["1/25", "626/625"]]);
        let hgh = h.compose(&g).unwrap().compose(&h.inverse()).unwrap();
        let solver = MembershipSolver::new(&t, std::slice::from_ref(&g2)).unwrap();
        assert_eq!(solver.solve(&g).unwrap(), None);
        assert_eq!(
            solver.solve(&g2.compose(&g2).unwrap()).unwrap(),
            Some(w(&[1, 1]))
        );
        let gens = vec![g.clone(), hgh.clone()];
        let solver = MembershipSolver::new(&t, &gens).unwrap();
        let q = g.compose(&hgh.inverse()).unwrap().compose(&g).unwrap();
        let word = solver.solve(&q).unwrap().unwrap();
        assert!(evaluate(&t, &gens, &word).unwrap().proj_equal(&q).unwrap());
        assert_eq!(
            solver.solve(&ProjMatrix::identity(t.context())).unwrap(),
            Some(Word::empty())
        );
    }

    #[test]
    fn not_strongly_reduced_rejected() {
        let c = CayleyTree::new(2);
        assert!(ReducedBasis::new(&c, track(&[w(&[1]), w(&[1, 2])])).is_err());
    }

    #[test]
    fn u_pm_matches_path_shortening() {
        let c = CayleyTree::new(2);
        let g = w(&[1, 2, -1, 2]);
        for target in [
            w(&[]),
            w(&[1]),
            w(&[1, 2]),
            w(&[2, -1]),
            w(&[1, 2, -1, 2, 2]),
            w(&[-2, 1, -2]),
        ] {
            let ginv = g.inverse();
            let shortens = [&g, &ginv].iter().any(|e| {
                let ew = c.act(e, &target).unwrap();
                c.compare_from_base(&ew, &target).unwrap() == Ordering::Less
            });
            assert_eq!(in_u_pm(&c, &g, &target).unwrap(), shortens, "{target}");
        }
    }
}
