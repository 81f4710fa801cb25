//! Tree geometry against independent oracles: lattice distances from
//! exact rational elementary-divisor computations, the four-point
//! condition, and string algebra on the Cayley tree.

use hyperbasis::bttree::Vertex;
use hyperbasis::treeaction::{ball, point_on_path};
use hyperbasis::{
    delta, norm, translation_length, BruhatTitsTree, CayleyTree, PadicContext, ProjMatrix,
    TreeAction, Word,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

type Mat = [[BigRational; 2]; 2];

fn vp_int(p: u64, n: &BigInt) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

fn vp(p: u64, q: &BigRational) -> Option<i64> {
    if q.is_zero() {
        None
    } else {
        Some(vp_int(p, q.numer()) - vp_int(p, q.denom()))
    }
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn inv(a: &Mat) -> Mat {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    [
        [&a[1][1] / &det, -&a[0][1] / &det],
        [-&a[1][0] / &det, &a[0][0] / &det],
    ]
}

/// `v(det A) - 2 min v(a_ij)`, the gap between the elementary divisors.
fn lattice_distance(p: u64, a: &Mat) -> u64 {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    let min = a.iter().flatten().filter_map(|x| vp(p, x)).min().unwrap();
    (vp(p, &det).unwrap() - 2 * min) as u64
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn basis_matrix(p: u64, v: &Vertex) -> Mat {
    let (num, k) = v.offset();
    let pn = if v.level() >= 0 {
        BigRational::from_integer(BigInt::from(p).pow(v.level() as u32))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(p).pow((-v.level()) as u32))
    };
    let u = BigRational::new(BigInt::from(num.clone()), BigInt::from(p).pow(k));
    [[pn, u], [BigRational::zero(), BigRational::one()]]
}

fn tree(p: u64) -> BruhatTitsTree {
    BruhatTitsTree::new(PadicContext::new(p, 60).unwrap())
}

fn vertex_strategy() -> impl Strategy<Value = (i64, i64, u32)> {
    (-4i64..6, 0i64..2000, 0u32..3)
}

fn make_vertex(t: &BruhatTitsTree, (n, num, k): (i64, i64, u32)) -> Vertex {
    t.parse_vertex(n, &format!("{num}/{}", t.prime().pow(k)))
        .unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = [(i64, i64); 4]> {
    let entry = (
        -60i64..60,
        prop::sample::select(vec![1i64, 2, 3, 5, 9, 25, 27]),
    );
    [entry.clone(), entry.clone(), entry.clone(), entry]
}

fn make_matrix(t: &BruhatTitsTree, e: [(i64, i64); 4]) -> Option<(ProjMatrix, Mat)> {
    let s: Vec<String> = e.iter().map(|(n, d)| format!("{n}/{d}")).collect();
    let q: Vec<BigRational> = e.iter().map(|&(n, d)| rat(n, d)).collect();
    if &q[0] * &q[3] == &q[1] * &q[2] {
        return None;
    }
    let m = ProjMatrix::from_strings(t.context(), &[[&s[0], &s[1]], [&s[2], &s[3]]]).ok()?;
    Some((
        m,
        [[q[0].clone(), q[1].clone()], [q[2].clone(), q[3].clone()]],
    ))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_matches_elementary_divisors(
        p in prop::sample::select(vec![2u64, 3, 5]),
        a in vertex_strategy(),
        b in vertex_strategy(),
    ) {
        let t = tree(p);
        let (v, w) = (make_vertex(&t, a), make_vertex(&t, b));
        let oracle = lattice_distance(p, &mul(&inv(&basis_matrix(p, &v)), &basis_matrix(p, &w)));
        prop_assert_eq!(t.distance(&v, &w).unwrap(), oracle);
    }

    #[test]
    fn action_matches_lattice_image(
        p in prop::sample::select(vec![2u64, 3, 5]),
        a in vertex_strategy(),
        e in matrix_strategy(),
    ) {
        let t = tree(p);
        let Some((g, gq)) = make_matrix(&t, e) else { return Ok(()) };
        let v = make_vertex(&t, a);
        let gv = t.act(&g, &v).unwrap();
        // g M_v and M_{gv} span the same lattice class.
        let a = mul(&inv(&basis_matrix(p, &gv)), &mul(&gq, &basis_matrix(p, &v)));
        prop_assert_eq!(lattice_distance(p, &a), 0);
    }

    #[test]
    fn action_is_an_isometry_and_composes(
        p in prop::sample::select(vec![2u64, 3, 7]),
        a in vertex_strategy(),
        b in vertex_strategy(),
        e in matrix_strategy(),
        f in matrix_strategy(),
    ) {
        let t = tree(p);
        let (Some((g, _)), Some((h, _))) = (make_matrix(&t, e), make_matrix(&t, f)) else { return Ok(()) };
        let (v, w) = (make_vertex(&t, a), make_vertex(&t, b));
        let (gv, gw) = (t.act(&g, &v).unwrap(), t.act(&g, &w).unwrap());
        prop_assert_eq!(t.distance(&gv, &gw).unwrap(), t.distance(&v, &w).unwrap());
        let gh = t.compose(&g, &h).unwrap();
        prop_assert_eq!(t.act(&gh, &v).unwrap(), t.act(&g, &t.act(&h, &v).unwrap()).unwrap());
        let ginv = t.inverse(&g).unwrap();
        prop_assert_eq!(t.act(&ginv, &gv).unwrap(), v);
    }

    #[test]
    fn four_point_condition(
        p in prop::sample::select(vec![2u64, 3]),
        pts in [vertex_strategy(), vertex_strategy(), vertex_strategy(), vertex_strategy()],
    ) {
        let t = tree(p);
        let v: Vec<Vertex> = pts.iter().map(|&x| make_vertex(&t, x)).collect();
        let d = |i: usize, j: usize| t.distance(&v[i], &v[j]).unwrap();
        let mut sums = [d(0, 1) + d(2, 3), d(0, 2) + d(1, 3), d(0, 3) + d(1, 2)];
        sums.sort();
        prop_assert_eq!(sums[1], sums[2]);
    }

    #[test]
    fn paths_are_geodesics(
        p in prop::sample::select(vec![2u64, 5]),
        a in vertex_strategy(),
        b in vertex_strategy(),
    ) {
        let t = tree(p);
        let (v, w) = (make_vertex(&t, a), make_vertex(&t, b));
        let d = t.distance(&v, &w).unwrap();
        let path = t.path(&v, &w).unwrap();
        prop_assert_eq!(path.len() as u64, d);
        let mut cur = v.clone();
        for (k, s) in path.steps.iter().enumerate() {
            let next = t.step(&cur, *s).unwrap();
            prop_assert_eq!(t.distance(&cur, &next).unwrap(), 1);
            prop_assert_eq!(t.distance(&v, &next).unwrap(), k as u64 + 1);
            cur = next;
        }
        prop_assert_eq!(cur, w.clone());
        let mid = point_on_path(&t, &v, &w, d / 2).unwrap();
        prop_assert_eq!(t.distance(&v, &mid).unwrap() + t.distance(&mid, &w).unwrap(), d);
    }

    #[test]
    fn cayley_norm_delta_and_translation(
        rank in 1usize..4,
        a in prop::collection::vec((0usize..3, any::<bool>()), 0..12),
        b in prop::collection::vec((0usize..3, any::<bool>()), 0..12),
    ) {
        let t = CayleyTree::new(rank);
        let word = |v: &[(usize, bool)]| {
            Word::reduced(v.iter().map(|&(i, inv)| hyperbasis::Letter::new(i % rank, inv)))
        };
        let (g, h) = (word(&a), word(&b));
        prop_assert_eq!(norm(&t, &g).unwrap(), g.len() as u64);
        let common = g.letters().iter().zip(h.letters()).take_while(|(x, y)| x == y).count();
        prop_assert_eq!(delta(&t, &g, &h).unwrap(), common as u64);
        // Cyclically reduce by hand.
        let mut l = g.letters().to_vec();
        while l.len() >= 2 && l[0] == l[l.len() - 1].inv() {
            l.pop();
            l.remove(0);
        }
        prop_assert_eq!(translation_length(&t, &g).unwrap(), l.len() as u64);
    }
}

#[test]
fn ball_sizes() {
    for p in [2u64, 3, 5] {
        let t = tree(p);
        for r in 0..4u32 {
            let expected = if r == 0 {
                1
            } else {
                1 + (p + 1) * (p.pow(r) - 1) / (p - 1)
            };
            assert_eq!(
                ball(&t, &Vertex::base(), r as u64).unwrap().len() as u64,
                expected
            );
        }
    }
    let c = CayleyTree::new(2);
    assert_eq!(ball(&c, &Word::empty(), 3).unwrap().len(), 1 + 4 + 12 + 36);
}
