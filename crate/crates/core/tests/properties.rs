//! Property tests: ring axioms, series division, linear solving against a
//! naive elimination, Lie algebra identities and module axioms on random
//! inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use weylmod::liealg::{bracket, AlgebraCtx, DiffOp};
use weylmod::parse::{parse_operator, parse_poly};
use weylmod::scalars::{series_quotient, solve_linear, Matrix, Params, Rat, Scalar, Series};
use weylmod::umod::{act, OmegaSpec, Poly};

fn params() -> Params {
    Params::parse("lambda:inv,a,b").unwrap()
}

fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rat::new(p, q))
}

/// Small Laurent polynomials in `lambda` with polynomial `a`, `b`.
fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((rat(), -2i64..=2, 0i64..=2, 0i64..=1), 0..4).prop_map(|terms| {
        let p = params();
        terms.into_iter().fold(Scalar::zero(), |acc, (c, l, a, b)| {
            let m = &(&p.var("lambda").unwrap().pow(l).unwrap() * &p.var("a").unwrap().pow(a).unwrap())
                * &p.var("b").unwrap().pow(b).unwrap();
            &acc + &m.scale(&c)
        })
    })
}

fn diffop(ctx: AlgebraCtx) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((rat(), -3i64..=3, 0u32..=3), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(DiffOp::zero(ctx), |acc, (c, m, n)| {
            acc.add(&DiffOp::t_d(ctx, m, n).scale(&Scalar::from_rat(c))).unwrap()
        })
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((rat(), 0u32..=4), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Poly::zero(1), |acc, (c, k)| acc.add(&Poly::monomial(&[k], Scalar::from_rat(c))).unwrap())
    })
}

fn big(r: &Rat) -> BigRational {
    r.to_big()
}

/// Rank by textbook Gaussian elimination over the rationals.
fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalar_ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
        let lam = params().var("lambda").unwrap();
        prop_assert_eq!(&(&x * &lam) * &lam.inv().unwrap(), x.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(x in scalar(), y in scalar()) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!((&x * &y).div_exact(&y).unwrap(), x);
    }

    #[test]
    fn scalar_text_round_trips(x in scalar()) {
        let back = weylmod::parse::parse_scalar(&x.to_string(), &params()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rational_text_round_trips(r in rat()) {
        prop_assert_eq!(r.to_string().parse::<Rat>().unwrap(), r.clone());
        prop_assert_eq!(big(&r), BigRational::new(r.numer(), r.denom()));
    }

    #[test]
    fn series_quotient_round_trip(
        num in prop::collection::vec(rat(), 1..7),
        den in prop::collection::vec(rat(), 1..7),
        lead in rat(),
    ) {
        prop_assume!(!lead.is_zero());
        let order = num.len().min(den.len()) - 1;
        let n = Series::new(num.into_iter().map(Scalar::from_rat).collect()).truncate(order);
        let mut dc: Vec<Scalar> = den.into_iter().map(Scalar::from_rat).collect();
        dc[0] = Scalar::from_rat(lead);
        let d = Series::new(dc).truncate(order);
        let q = series_quotient(&n, &d).unwrap();
        prop_assert_eq!(q.mul(&d).truncate(order), n);
    }

    #[test]
    fn solve_linear_matches_naive_elimination(rows in int_matrix(), rhs_seed in prop::collection::vec(-3i64..=3, 4)) {
        let r: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_ints(&r).unwrap();
        let b: Vec<Vec<i64>> = (0..rows.len()).map(|i| vec![rhs_seed[i]]).collect();
        let br: Vec<&[i64]> = b.iter().map(Vec::as_slice).collect();
        let sol = solve_linear(&m, &Matrix::from_ints(&br).unwrap()).unwrap();
        prop_assert_eq!(sol.rank, naive_rank(&rows));
        prop_assert_eq!(sol.nullspace.len(), m.cols() - sol.rank);
        for v in &sol.nullspace {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        // consistent iff appending b does not raise the rank
        let augmented: Vec<Vec<i64>> = rows.iter().zip(&b).map(|(r, x)| r.iter().chain(x).copied().collect()).collect();
        let consistent = naive_rank(&augmented) == sol.rank;
        match &sol.particular[0] {
            Some(x) => {
                prop_assert!(consistent);
                let lhs = m.mul_vec(&x.num).unwrap();
                for (l, bi) in lhs.iter().zip(&b) {
                    prop_assert_eq!(l.clone(), &x.den * &Scalar::from_int(bi[0]));
                }
            }
            None => prop_assert!(!consistent),
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_graded(
        x in diffop(AlgebraCtx::extended()),
        y in diffop(AlgebraCtx::extended()),
    ) {
        let xy = bracket(&x, &y).unwrap();
        let yx = bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).unwrap().is_zero());
        for (mx, cx) in x.grade_components() {
            for (my, cy) in y.grade_components() {
                let c = bracket(&cx, &cy).unwrap();
                for (m, _) in c.grade_components() {
                    prop_assert_eq!(m[0], mx[0] + my[0]);
                }
            }
        }
    }

    #[test]
    fn jacobi_on_random_operators(
        x in diffop(AlgebraCtx::extended()),
        y in diffop(AlgebraCtx::extended()),
        z in diffop(AlgebraCtx::extended()),
    ) {
        let j = bracket(&x, &bracket(&y, &z).unwrap()).unwrap()
            .add(&bracket(&y, &bracket(&z, &x).unwrap()).unwrap()).unwrap()
            .add(&bracket(&z, &bracket(&x, &y).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn module_axiom_on_random_inputs(
        x in diffop(AlgebraCtx::circle()),
        y in diffop(AlgebraCtx::circle()),
        f in poly(),
        lam in rat(),
        eps in 0u8..=1,
    ) {
        prop_assume!(!lam.is_zero());
        let spec = OmegaSpec::d_module(Scalar::from_rat(lam), eps).unwrap();
        let v = spec.vector(f).unwrap();
        let lhs = act(&bracket(&x, &y).unwrap(), &v).unwrap();
        let xy = act(&x, &act(&y, &v).unwrap()).unwrap();
        let yx = act(&y, &act(&x, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs.poly().clone(), xy.poly().sub(yx.poly()).unwrap());
    }

    #[test]
    fn operator_text_round_trips(x in diffop(AlgebraCtx::extended())) {
        prop_assert_eq!(parse_operator(&x.to_string(), &params(), 1).unwrap(), x);
    }

    #[test]
    fn polynomial_text_round_trips(f in poly()) {
        prop_assert_eq!(parse_poly(&f.to_string(), &params(), 1).unwrap(), f);
    }
}

#[test]
fn naive_rank_oracle_sanity() {
    assert_eq!(naive_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(naive_rank(&[vec![1, 0], vec![0, 1]]), 2);
    assert_eq!(naive_rank(&[vec![0, 0]]), 0);
}
