use lt_kummer::algnum::{all_roots_weil, AlgNum};
use lt_kummer::padic::{factor_shape_over_qp, select_padic_root, valuation, LocalFactor, PadicError, RootSeed};
use lt_kummer::poly::IntPoly;
use lt_kummer::supernat::{Exponent, Supernatural};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        4 => (0u32..5).prop_map(|n| Exponent::Finite(BigUint::from(n))),
        1 => Just(Exponent::Infinite),
    ]
}

fn supernatural() -> impl Strategy<Value = Supernatural> {
    (
        prop::collection::vec((prop::sample::select(&PRIMES[..]), exponent()), 0..4),
        prop_oneof![4 => Just(Exponent::zero()), 1 => exponent()],
    )
        .prop_map(|(explicit, default)| Supernatural::new(explicit, default))
}

proptest! {
    #[test]
    fn supernatural_lattice_laws(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert_eq!(a.lcm(&b), b.lcm(&a));
        prop_assert_eq!(a.gcd(&b), b.gcd(&a));
        prop_assert_eq!(a.lcm(&b).lcm(&c), a.lcm(&b.lcm(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.lcm(&a.gcd(&b)), a.clone());
        prop_assert!(a.divides(&a.lcm(&b)) && a.gcd(&b).divides(&a));
        prop_assert!(a.divides(&a.mul(&b)));
        prop_assert_eq!(a.lcm(&b).is_quasi_finite(), a.is_quasi_finite() && b.is_quasi_finite());
        prop_assert_eq!(a.to_string().parse::<Supernatural>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Supernatural>(&json).unwrap(), a);
    }

    #[test]
    fn naturals_embed(m in 1u64..5000, n in 1u64..5000) {
        let (a, b) = (Supernatural::from_natural(m), Supernatural::from_natural(n));
        let g = num_integer::gcd(m, n);
        prop_assert_eq!(a.gcd(&b), Supernatural::from_natural(g));
        prop_assert_eq!(a.lcm(&b), Supernatural::from_natural(m / g * n));
        prop_assert_eq!(a.mul(&b).to_natural(), Some(BigUint::from(m) * n));
        prop_assert_eq!(a.divides(&b), n % m == 0);
    }

    #[test]
    fn polynomials_print_and_parse(c in prop::collection::vec(-1000i64..1000, 1..8)) {
        let f = IntPoly::from_i64(&c);
        prop_assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f);
    }
}

/// Weil q-integers of degree 2: roots of `x^2 - a x + q` with `a^2 < 4q`.
fn weil_quadratic() -> impl Strategy<Value = (IntPoly, i64)> {
    prop::sample::select(vec![2i64, 3, 4, 5, 7, 9, 11]).prop_flat_map(|q| {
        let bound = (4.0 * q as f64).sqrt().ceil() as i64;
        (-bound + 1..bound).prop_filter_map("a^2 < 4q", move |a| {
            (a * a < 4 * q).then(|| (IntPoly::from_i64(&[q, -a, 1]), q))
        })
    })
}

/// Two Weil quadratics for the same q.
fn weil_pair() -> impl Strategy<Value = ((IntPoly, i64), (IntPoly, i64))> {
    weil_quadratic().prop_flat_map(|(f, q)| {
        let bound = (4.0 * q as f64).sqrt().ceil() as i64;
        let g = (-bound + 1..bound)
            .prop_filter_map("a^2 < 4q", move |a| (a * a < 4 * q).then(|| (IntPoly::from_i64(&[q, -a, 1]), q)));
        (Just((f, q)), g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weil_closed_under_powers_and_products(((f, q), (g, _)) in weil_pair(), m in 1u32..5) {
        let alpha = &AlgNum::complex_roots(&f).unwrap()[0];
        let beta = &AlgNum::complex_roots(&g).unwrap()[1];
        let qm = BigInt::from(q).pow(m);
        prop_assert!(alpha.is_weil_q_integer(&BigInt::from(q)).unwrap());
        prop_assert!(alpha.power(m).unwrap().is_weil_q_integer(&qm).unwrap());
        let ab = alpha.product(beta).unwrap();
        prop_assert!(ab.is_weil_q_integer(&BigInt::from(q * q)).unwrap());
        let ba = beta.product(alpha).unwrap();
        prop_assert_eq!(ab.minpoly(), ba.minpoly());
        // a Weil number for q is not one for q + 1
        prop_assert!(!all_roots_weil(&f, &BigInt::from(q + 1)));
    }
}

#[test]
fn products_are_associative() {
    let roots = |s: &str| AlgNum::complex_roots(&s.parse().unwrap()).unwrap();
    let polys = ["x^2 - x + 7", "x^2 + 1", "x^2 - 2", "x^3 - 2", "x^2 + x + 1", "x^2 - 2*x + 5"];
    for seed in 0..10usize {
        let a = &roots(polys[seed % 6])[seed % 2];
        let b = &roots(polys[(seed + 1) % 6])[(seed / 2) % 2];
        let c = &roots(polys[(seed + 3) % 6])[0];
        let left = a.product(b).unwrap().product(c).unwrap();
        let right = a.product(&b.product(c).unwrap()).unwrap();
        assert_eq!(left.minpoly(), right.minpoly(), "seed {seed}");
        let (l, r) = (left.disk().unwrap(), right.disk().unwrap());
        assert!(!l.disjoint(&r), "seed {seed}: the two products pick different roots");
    }
}

/// A factor over Q_p with known shape.
#[derive(Debug, Clone)]
enum Block {
    /// `x - p^v u`
    Linear { v: u32, u: i64 },
    /// `x^e - p^h u` with `gcd(e, h) = 1`
    Eisenstein { e: u32, h: u32, u: i64 },
    /// `x^2 - n p^(2k)` with `n` a non-square unit mod p
    Unramified { k: u32, n: i64 },
}

fn is_square_mod(n: i64, p: u64) -> bool {
    let p = p as i64;
    (0..p).any(|t| (t * t - n).rem_euclid(p) == 0)
}

impl Block {
    fn poly(&self, p: u64) -> IntPoly {
        let pp = |k: u32| BigInt::from(p).pow(k);
        match *self {
            Block::Linear { v, u } => IntPoly::linear_root(&(pp(v) * u)),
            Block::Eisenstein { e, h, u } => {
                &IntPoly::monomial(BigInt::from(1), e as usize) - &IntPoly::constant(pp(h) * u)
            }
            Block::Unramified { k, n } => {
                &IntPoly::monomial(BigInt::from(1), 2) - &IntPoly::constant(pp(2 * k) * n)
            }
        }
    }

    fn shape(&self) -> Vec<LocalFactor> {
        let lf = |degree: usize, e: usize, f: usize, num: u32, den: u32| LocalFactor {
            degree,
            e,
            f,
            slope: BigRational::new(num.into(), den.into()),
        };
        match *self {
            Block::Linear { v, .. } => vec![lf(1, 1, 1, v, 1)],
            Block::Eisenstein { e, h, .. } => vec![lf(e as usize, e as usize, 1, h, e)],
            Block::Unramified { k, .. } => vec![lf(2, 1, 2, k, 1)],
        }
    }
}

fn block(p: u64) -> impl Strategy<Value = Block> {
    let unit = (1i64..60).prop_filter("unit", move |u| u % p as i64 != 0);
    prop_oneof![
        (0u32..4, unit.clone()).prop_map(|(v, u)| Block::Linear { v, u }),
        (2u32..5, 1u32..6, unit.clone())
            .prop_filter("coprime", |(e, h, _)| num_integer::gcd(*e, *h) == 1)
            .prop_map(|(e, h, u)| Block::Eisenstein { e, h, u }),
        (0u32..3, unit.prop_filter("non-square", move |n| !is_square_mod(*n, p)))
            .prop_map(|(k, n)| Block::Unramified { k, n }),
    ]
}

fn blocks() -> impl Strategy<Value = (u64, Vec<Block>)> {
    prop::sample::select(vec![3u64, 5, 7, 13])
        .prop_flat_map(|p| (Just(p), prop::collection::vec(block(p), 1..4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The factorization of a product over Q_p is the union of the factorizations.
    /// Two unramified blocks with the same residual quadratic are beyond the
    /// linear sharpening steps and may come back undetermined.
    #[test]
    fn shapes_of_products_of_known_blocks((p, bs) in blocks()) {
        let f = bs.iter().fold(IntPoly::one(), |acc, b| &acc * &b.poly(p));
        prop_assume!(f.is_squarefree());
        let key = |a: &LocalFactor| (a.slope.clone(), a.degree, a.e);
        let mut expected: Vec<LocalFactor> = bs.iter().flat_map(Block::shape).collect();
        expected.sort_by_key(key);
        let residual_quadratics: Vec<(u32, i64)> = bs
            .iter()
            .filter_map(|b| match *b {
                Block::Unramified { k, n } => Some((k, n.rem_euclid(p as i64))),
                _ => None,
            })
            .collect();
        let shared = (0..residual_quadratics.len())
            .any(|i| residual_quadratics[i + 1..].contains(&residual_quadratics[i]));
        match factor_shape_over_qp(&f, p, 64) {
            Ok(mut got) => {
                got.sort_by_key(key);
                prop_assert_eq!(got, expected);
            }
            Err(PadicError::Undetermined { .. }) if shared => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    /// Degrees add up to deg f, slopes weighted by degree add up to v_p(f(0)),
    /// and a larger budget never changes a determined answer.
    #[test]
    fn shape_invariants(p in prop::sample::select(vec![2u64, 3, 5, 7]), c in prop::collection::vec(-60i64..60, 1..7)) {
        let mut c = c;
        c.push(1);
        prop_assume!(c[0] != 0);
        let f = IntPoly::from_i64(&c);
        prop_assume!(f.is_squarefree());
        if let Ok(sh) = factor_shape_over_qp(&f, p, 16) {
            prop_assert_eq!(sh.iter().map(|l| l.degree).sum::<usize>(), f.degree());
            let total: BigRational = sh.iter().map(|l| &l.slope * BigRational::from_integer(l.degree.into())).sum();
            prop_assert_eq!(total, BigRational::from_integer(valuation(&f.coeff(0), p).into()));
            prop_assert!(sh.iter().all(|l| l.degree == l.e * l.f));
            prop_assert_eq!(factor_shape_over_qp(&f, p, 64).unwrap(), sh);
        }
    }

    /// Roots of `(x - a)(x - a - p^k t)` agree to `k` digits and still separate.
    #[test]
    fn deep_linear_clusters(p in prop::sample::select(vec![3u64, 5, 7]), a in 1i64..50, k in 1u32..12, t in 1i64..6) {
        prop_assume!(a % p as i64 != 0 && t % p as i64 != 0);
        let b = BigInt::from(a) + BigInt::from(p).pow(k) * t;
        let f = &IntPoly::linear_root(&BigInt::from(a)) * &IntPoly::linear_root(&b);
        let got = factor_shape_over_qp(&f, p, 64).unwrap();
        prop_assert_eq!(got.len(), 2);
        prop_assert!(got.iter().all(|l| l.degree == 1 && l.slope == BigRational::from_integer(0.into())));
        // each root is selected by its own residue once enough digits are given
        for root in [BigInt::from(a), b.clone()] {
            let modulus = BigInt::from(p).pow(k + 1);
            let t = u64::try_from(&root % &modulus).unwrap();
            let x = select_padic_root(&f, p, RootSeed::with_residue(0, t, k + 1), 40).unwrap();
            prop_assert_eq!(x.to_integer(), Some(root));
        }
    }
}
