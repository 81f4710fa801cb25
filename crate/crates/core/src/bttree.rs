//! The Bruhat-Tits tree of PGL₂(Q_p).
//!
//! A vertex is the homothety class of the lattice spanned by the columns of
//! `[[p^n, u], [0, 1]]`, with `u ∈ Q_p` taken modulo `p^n`. Equivalently it
//! is the closed ball `{x : v(x - u) >= n}` of Q_p, which makes distances
//! and paths closed-form:
//!
//! * the children of `(n, u)` are `(n + 1, u + a p^n)` for `a = 0..p`,
//!   labelled `a`, and its parent `(n - 1, u mod p^(n-1))` is labelled `∞`;
//! * `d((n, u), (m, w)) = n + m - 2 min(n, m, v(u - w))`.
//!
//! The offset `u` is stored exactly as `num / p^k`, `0 <= num < p^(n+k)`,
//! with `k` minimal.

use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{PAdic, PadicContext};
use crate::path::TreePath;
use crate::projlinear::ProjMatrix;
use crate::treeaction::{ball, TreeAction};

/// Edge label: one of the `p` children or the parent. `Child(0) < … <
/// Child(p-1) < Parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Child(u32),
    Parent,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Child(a) => write!(f, "{a}"),
            Label::Parent => f.write_str("∞"),
        }
    }
}

/// Normal form `(n, u mod p^n)` of a lattice class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    level: i64,
    den_exp: u32,
    num: BigUint,
}

impl Vertex {
    /// The standard lattice `Z_p²`.
    pub fn base() -> Self {
        Vertex {
            level: 0,
            den_exp: 0,
            num: BigUint::zero(),
        }
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// The offset as `(numerator, k)` meaning `numerator / p^k`.
    pub fn offset(&self) -> (&BigUint, u32) {
        (&self.num, self.den_exp)
    }
}

pub type BtPath = TreePath<Vertex, Label>;

/// PGL₂(Q_p) acting on its Bruhat-Tits tree.
#[derive(Clone, Debug)]
pub struct BruhatTitsTree {
    ctx: Arc<PadicContext>,
}

impl BruhatTitsTree {
    pub fn new(ctx: Arc<PadicContext>) -> Self {
        BruhatTitsTree { ctx }
    }

    pub fn context(&self) -> &Arc<PadicContext> {
        &self.ctx
    }

    pub fn prime(&self) -> u64 {
        self.ctx.prime()
    }

    fn pow(&self, k: i64) -> BigUint {
        debug_assert!(k >= 0);
        self.ctx.pow(k as u32).into_owned()
    }

    /// Canonical vertex for offset `num / p^k` at `level`.
    fn make_vertex(&self, level: i64, num: BigUint, k: u32) -> Vertex {
        let top = level + k as i64;
        if top <= 0 || num.is_zero() {
            return Vertex {
                level,
                den_exp: 0,
                num: BigUint::zero(),
            };
        }
        let mut num = num % self.pow(top);
        let mut k = k;
        while k > 0 && !num.is_zero() {
            let (q, r) = num.div_rem(self.ctx.prime_big());
            if !r.is_zero() {
                break;
            }
            num = q;
            k -= 1;
        }
        if num.is_zero() {
            k = 0;
        }
        Vertex {
            level,
            den_exp: k,
            num,
        }
    }

    /// The vertex `(level, u mod p^level)`.
    pub fn vertex(&self, level: i64, offset: &PAdic) -> Result<Vertex> {
        self.vertex_from_quotient(level, offset, &PAdic::one(&self.ctx))
    }

    /// Parses an offset given as a rational string.
    pub fn parse_vertex(&self, level: i64, offset: &str) -> Result<Vertex> {
        self.vertex(level, &PAdic::parse(&self.ctx, offset)?)
    }

    /// The vertex `(level, y/z mod p^level)`, dividing only at the
    /// precision the offset actually needs.
    fn vertex_from_quotient(&self, level: i64, y: &PAdic, z: &PAdic) -> Result<Vertex> {
        let vz = z.valuation()?;
        if y.is_zero_to_precision() {
            let bound = y.valuation_bound();
            if bound == i64::MAX || bound - vz >= level {
                return Ok(self.make_vertex(level, BigUint::zero(), 0));
            }
            return Err(Error::precision("vertex offset is zero to precision"));
        }
        let vu = y.valuation()? - vz;
        if vu >= level {
            return Ok(self.make_vertex(level, BigUint::zero(), 0));
        }
        let digits = (level - vu) as u32;
        if y.relative_precision() < digits || z.relative_precision() < digits {
            return Err(Error::precision(format!(
                "vertex offset needs {digits} digits, carried {}",
                y.relative_precision().min(z.relative_precision())
            )));
        }
        let m = self.ctx.pow(digits);
        let yu = y.unit().expect("nonzero") % m.as_ref();
        let zu = z.unit().expect("nonzero") % m.as_ref();
        let unit = (yu * zu.modinv(m.as_ref()).expect("unit")) % m.as_ref();
        Ok(if vu >= 0 {
            self.make_vertex(level, unit * self.pow(vu), 0)
        } else {
            self.make_vertex(level, unit, (-vu) as u32)
        })
    }

    /// Column-Hermite normal form of the lattice with basis columns
    /// `(top[j], bottom[j])`, given `v(det)`.
    fn normal_form(&self, top: [PAdic; 2], bottom: [PAdic; 2], vdet: i64) -> Result<Vertex> {
        let j = pivot(&bottom)?;
        let vz = bottom[j].valuation()?;
        let level = vdet - 2 * vz;
        self.vertex_from_quotient(level, &top[j], &bottom[j])
    }

    /// The offset `u` as a p-adic number.
    pub fn offset_padic(&self, v: &Vertex) -> PAdic {
        if v.num.is_zero() {
            return PAdic::zero(&self.ctx);
        }
        let (val, unit) = self.ctx.split_valuation(&v.num);
        PAdic::from_unit(&self.ctx, val as i64 - v.den_exp as i64, &unit)
            .expect("prime-to-p part is a unit")
    }

    /// `min(n₁, n₂, v(u₁ - u₂))`, the level of the smallest ball holding both.
    fn join_level(&self, v: &Vertex, w: &Vertex) -> i64 {
        let m = v.level.min(w.level);
        let k = v.den_exp.max(w.den_exp);
        let a = BigInt::from(&v.num * self.pow((k - v.den_exp) as i64));
        let b = BigInt::from(&w.num * self.pow((k - w.den_exp) as i64));
        let diff = a - b;
        if diff.is_zero() {
            return m;
        }
        let (val, _) = self.ctx.split_valuation(diff.magnitude());
        m.min(val as i64 - k as i64)
    }

    /// Base-p digits of the offset numerator, least significant first.
    fn digits(&self, v: &Vertex) -> Vec<u32> {
        let p = self.ctx.prime();
        if p <= 256 {
            return v
                .num
                .to_radix_le(p as u32)
                .into_iter()
                .map(u32::from)
                .collect();
        }
        let mut out = Vec::new();
        let mut cur = v.num.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(self.ctx.prime_big());
            out.push(r.to_u32().expect("digit below p"));
            cur = q;
        }
        out
    }

    /// Human-readable `(n, u)`.
    pub fn format_vertex(&self, v: &Vertex) -> String {
        if v.den_exp == 0 {
            format!("({}, {})", v.level, v.num)
        } else {
            format!("({}, {}/{})", v.level, v.num, self.pow(v.den_exp as i64))
        }
    }

    /// Graphviz rendering of `B(v₀, radius)`; vertices for which
    /// `highlight` returns true are filled.
    pub fn ball_dot<F>(&self, radius: u64, mut highlight: F) -> Result<String>
    where
        F: FnMut(&Vertex) -> Result<bool>,
    {
        let verts = ball(self, &Vertex::base(), radius)?;
        let mut out = String::new();
        writeln!(out, "graph ball {{").unwrap();
        writeln!(
            out,
            "  // p = {}, radius = {radius}, vertices = {}",
            self.prime(),
            verts.len()
        )
        .unwrap();
        writeln!(out, "  node [shape=ellipse, fontsize=10];").unwrap();
        for (i, (v, _)) in verts.iter().enumerate() {
            let style = if highlight(v)? {
                ", style=filled, fillcolor=\"#9ecae1\""
            } else {
                ""
            };
            writeln!(out, "  v{i} [label=\"{}\"{style}];", self.format_vertex(v)).unwrap();
        }
        for (i, (_, parent)) in verts.iter().enumerate() {
            if let Some(j) = parent {
                writeln!(out, "  v{j} -- v{i};").unwrap();
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Index of the bottom-row entry of least valuation.
fn pivot(bottom: &[PAdic; 2]) -> Result<usize> {
    let (b0, b1) = (&bottom[0], &bottom[1]);
    match (b0.is_zero_to_precision(), b1.is_zero_to_precision()) {
        (false, false) => Ok(if b0.valuation()? < b1.valuation()? {
            0
        } else {
            1
        }),
        (true, false) if b0.valuation_bound() >= b1.valuation()? => Ok(1),
        (false, true) if b1.valuation_bound() >= b0.valuation()? => Ok(0),
        _ => Err(Error::precision("cannot determine lattice pivot")),
    }
}

impl TreeAction for BruhatTitsTree {
    type Element = ProjMatrix;
    type Vertex = Vertex;
    type Label = Label;

    fn base_vertex(&self) -> Vertex {
        Vertex::base()
    }

    fn identity(&self) -> ProjMatrix {
        ProjMatrix::identity(&self.ctx)
    }

    fn compose(&self, g: &ProjMatrix, h: &ProjMatrix) -> Result<ProjMatrix> {
        g.compose(h)
    }

    fn inverse(&self, g: &ProjMatrix) -> Result<ProjMatrix> {
        Ok(g.inverse())
    }

    fn is_identity(&self, g: &ProjMatrix) -> bool {
        g.is_identity()
    }

    fn elements_equal(&self, g: &ProjMatrix, h: &ProjMatrix) -> Result<bool> {
        g.proj_equal(h)
    }

    fn act(&self, g: &ProjMatrix, v: &Vertex) -> Result<Vertex> {
        let vdet = g.det()?.valuation()?;
        if v.level == 0 && v.num.is_zero() {
            return self.normal_form([g.a.clone(), g.b.clone()], [g.c.clone(), g.d.clone()], vdet);
        }
        let pn = PAdic::prime_power(&self.ctx, v.level);
        let u = self.offset_padic(v);
        let top = [g.a.mul(&pn)?, g.a.mul(&u)?.add(&g.b)?];
        let bottom = [g.c.mul(&pn)?, g.c.mul(&u)?.add(&g.d)?];
        self.normal_form(top, bottom, vdet + v.level)
    }

    fn distance(&self, v: &Vertex, w: &Vertex) -> Result<u64> {
        let m = self.join_level(v, w);
        Ok((v.level + w.level - 2 * m) as u64)
    }

    fn path(&self, v: &Vertex, w: &Vertex) -> Result<BtPath> {
        let m = self.join_level(v, w);
        let mut steps = vec![Label::Parent; (v.level - m) as usize];
        let digits = self.digits(w);
        let k = w.den_exp as i64;
        for pos in m..w.level {
            let d = usize::try_from(pos + k)
                .ok()
                .and_then(|i| digits.get(i))
                .copied()
                .unwrap_or(0);
            steps.push(Label::Child(d));
        }
        Ok(TreePath {
            origin: v.clone(),
            steps,
        })
    }

    fn neighbors(&self, v: &Vertex) -> Result<Vec<(Label, Vertex)>> {
        let p = self.ctx.prime() as u32;
        let mut out = Vec::with_capacity(p as usize + 1);
        for a in 0..p {
            out.push((Label::Child(a), self.step(v, Label::Child(a))?));
        }
        out.push((Label::Parent, self.step(v, Label::Parent)?));
        Ok(out)
    }

    fn step(&self, v: &Vertex, label: Label) -> Result<Vertex> {
        match label {
            Label::Parent => Ok(self.make_vertex(v.level - 1, v.num.clone(), v.den_exp)),
            Label::Child(a) => {
                if a as u64 >= self.ctx.prime() {
                    return Err(Error::PreconditionViolated(format!(
                        "no child labelled {a}"
                    )));
                }
                let k = (v.den_exp as i64).max(-v.level);
                let shifted = &v.num * self.pow(k - v.den_exp as i64);
                let num = shifted + self.pow(v.level + k) * a;
                Ok(self.make_vertex(v.level + 1, num, k as u32))
            }
        }
    }

    fn displacement(&self, g: &ProjMatrix) -> Result<u64> {
        let vdet = g.det()?.valuation()?;
        let bottom = [g.c.clone(), g.d.clone()];
        let j = pivot(&bottom)?;
        let top = if j == 0 { &g.a } else { &g.b };
        let vz = bottom[j].valuation()?;
        let level = vdet - 2 * vz;
        let floor = level.min(0);
        let m = if top.is_zero_to_precision() {
            let bound = top.valuation_bound();
            if bound != i64::MAX && bound - vz < floor {
                return Err(Error::precision("displacement offset is zero to precision"));
            }
            floor
        } else {
            floor.min(top.valuation()? - vz)
        };
        Ok((level - 2 * m) as u64)
    }

    fn compare_from_base(&self, v: &Vertex, w: &Vertex) -> Result<Ordering> {
        let base = Vertex::base();
        let (dv, dw) = (self.distance(&base, v)?, self.distance(&base, w)?);
        if dv != dw {
            return Ok(dv.cmp(&dw));
        }
        Ok(self.path(&base, v)?.steps.cmp(&self.path(&base, w)?.steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::compare_paths;

    fn tree(p: u64) -> BruhatTitsTree {
        BruhatTitsTree::new(PadicContext::new(p, 40).unwrap())
    }

    fn m(t: &BruhatTitsTree, rows: [[&str; 2]; 2]) -> ProjMatrix {
        ProjMatrix::from_strings(t.context(), &rows).unwrap()
    }

    #[test]
    fn neighbors_of_base_at_two() {
        let t = tree(2);
        let n = t.neighbors(&Vertex::base()).unwrap();
        let shown: Vec<_> = n
            .iter()
            .map(|(l, v)| format!("{l}:{}", t.format_vertex(v)))
            .collect();
        assert_eq!(shown, vec!["0:(1, 0)", "1:(1, 1)", "∞:(-1, 0)"]);
        for (_, w) in &n {
            assert_eq!(t.distance(&Vertex::base(), w).unwrap(), 1);
        }
    }

    #[test]
    fn neighbors_are_distinct_and_adjacent() {
        let t = tree(3);
        let v = t.parse_vertex(-2, "7/27").unwrap();
        let n = t.neighbors(&v).unwrap();
        assert_eq!(n.len(), 4);
        for (i, (_, a)) in n.iter().enumerate() {
            assert_eq!(t.distance(&v, a).unwrap(), 1);
            for (_, b) in &n[i + 1..] {
                assert_ne!(a, b);
                assert_eq!(t.distance(a, b).unwrap(), 2);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let t = tree(5);
        let v0 = Vertex::base();
        assert_eq!(t.distance(&v0, &v0).unwrap(), 0);
        for n in -4..=4 {
            let w = t.parse_vertex(n, "0").unwrap();
            assert_eq!(t.distance(&v0, &w).unwrap(), n.unsigned_abs());
        }
        let w = t.parse_vertex(2, "5").unwrap();
        assert_eq!(t.distance(&w, &v0).unwrap(), 2);
    }

    #[test]
    fn offsets_are_reduced() {
        let t = tree(5);
        assert_eq!(
            t.parse_vertex(1, "6").unwrap(),
            t.parse_vertex(1, "1").unwrap()
        );
        assert_eq!(
            t.parse_vertex(-1, "3/5").unwrap(),
            t.parse_vertex(-1, "0").unwrap()
        );
        assert_eq!(t.parse_vertex(0, "3/5").unwrap().offset().1, 1);
        assert_eq!(
            t.parse_vertex(1, "3/5").unwrap().offset(),
            (&BigUint::from(3u32), 1)
        );
        assert_eq!(
            t.parse_vertex(2, "-1").unwrap().offset().0,
            &BigUint::from(24u32)
        );
    }

    #[test]
    fn paths() {
        let t = tree(5);
        let v0 = Vertex::base();
        assert!(t.path(&v0, &v0).unwrap().is_empty());
        let w = t.parse_vertex(3, "0").unwrap();
        let p = t.path(&v0, &w).unwrap();
        assert_eq!(p.steps, vec![Label::Child(0); 3]);
        let mut cur = v0.clone();
        for (k, s) in p.steps.iter().enumerate() {
            cur = t.step(&cur, *s).unwrap();
            assert_eq!(cur, t.parse_vertex(k as i64 + 1, "0").unwrap());
        }
        let a = t.parse_vertex(-1, "0").unwrap();
        let b = t.parse_vertex(2, "13/5").unwrap();
        let ab = t.path(&a, &b).unwrap();
        assert_eq!(ab.len() as u64, t.distance(&a, &b).unwrap());
        // Reverse as vertex sequences.
        let walk = |origin: &Vertex, steps: &[Label]| {
            let mut out = vec![origin.clone()];
            for s in steps {
                let next = t.step(out.last().unwrap(), *s).unwrap();
                out.push(next);
            }
            out
        };
        let mut fwd = walk(&a, &ab.steps);
        fwd.reverse();
        assert_eq!(fwd, walk(&b, &t.path(&b, &a).unwrap().steps));
    }

    #[test]
    fn action_examples() {
        let t = tree(5);
        let v0 = Vertex::base();
        let w = t.parse_vertex(2, "5").unwrap();
        assert_eq!(t.act(&t.identity(), &w).unwrap(), w);
        assert_eq!(
            t.act(&m(&t, [["5", "0"], ["0", "1"]]), &v0).unwrap(),
            t.parse_vertex(1, "0").unwrap()
        );
        assert_eq!(t.act(&m(&t, [["0", "1"], ["1", "0"]]), &v0).unwrap(), v0);
    }

    #[test]
    fn displacement_matches_distance() {
        let t = tree(3);
        let v0 = Vertex::base();
        for rows in [
            [["9", "1/3"], ["2", "5"]],
            [["1/27", "0"], ["0", "1"]],
            [["0", "1"], ["3", "0"]],
            [["1", "2/9"], ["0", "1"]],
        ] {
            let g = m(&t, rows);
            let d = t.distance(&v0, &t.act(&g, &v0).unwrap()).unwrap();
            assert_eq!(t.displacement(&g).unwrap(), d, "{rows:?}");
        }
    }

    #[test]
    fn path_order_via_labels() {
        let t = tree(2);
        let v0 = Vertex::base();
        let a = TreePath {
            origin: v0.clone(),
            steps: vec![Label::Child(0), Label::Child(0)],
        };
        let b = TreePath {
            origin: v0.clone(),
            steps: vec![Label::Child(1), Label::Child(0)],
        };
        assert_eq!(compare_paths(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(
            compare_paths(&TreePath::empty(v0.clone()), &b).unwrap(),
            Ordering::Less
        );
        let x = t.follow_labels(&a.steps);
        assert_eq!(
            t.compare_from_base(&x, &t.follow_labels(&b.steps)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn dot_ball_counts() {
        let t = tree(2);
        let dot = t.ball_dot(3, |_| Ok(false)).unwrap();
        assert_eq!(dot.matches("[label=").count(), 22);
        assert_eq!(dot.matches(" -- ").count(), 21);
    }

    impl BruhatTitsTree {
        fn follow_labels(&self, steps: &[Label]) -> Vertex {
            crate::treeaction::follow(self, &Vertex::base(), steps).unwrap()
        }
    }
}
