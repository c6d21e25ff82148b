//! Independent oracles and seeded generators shared by the integration tests.
//! Nothing here calls the elimination, expansion or enumeration code it is
//! used to check.
#![allow(dead_code)]

use acmq::algebra::{Monomial, Polynomial, Rational};
use acmq::pfaffian::{PolyMatrix, SkewPolyMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sign of a permutation by counting inversions.
pub fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All perfect matchings of `0..n` as sequences `(i1 j1 i2 j2 ...)` with
/// `i_k < j_k` and `i_1 < i_2 < ...`.
pub fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: Vec<usize>, acc: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc);
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            let mut next = rest.clone();
            let partner = next.remove(k);
            next.remove(0);
            let mut a = acc.clone();
            a.push(first);
            a.push(partner);
            go(next, a, out);
        }
    }
    let mut out = Vec::new();
    go((0..n).collect(), vec![], &mut out);
    out
}

/// Pfaffian as the signed sum over perfect matchings.
pub fn pfaffian_by_matchings(m: &SkewPolyMatrix) -> Polynomial {
    let n = m.order();
    let mut acc = Polynomial::zero();
    for matching in perfect_matchings(n) {
        let mut term = Polynomial::from_int(perm_sign(&matching));
        for pair in matching.chunks(2) {
            term = &term * &m.entry(pair[0], pair[1]);
        }
        acc = &acc + &term;
    }
    acc
}

/// Leibniz formula.
pub fn determinant_by_permutations(m: &PolyMatrix) -> Polynomial {
    let n = m.rows();
    let mut acc = Polynomial::zero();
    for p in permutations(n) {
        let mut term = Polynomial::from_int(perm_sign(&p));
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
            if term.is_zero() {
                break;
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Fraction-free (Bareiss) rank over Q of a matrix of rationals, after
/// clearing denominators row by row.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, q| num_integer::Integer::lcm(&l, q.denom()));
            r.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..n_rows {
            for j in c + 1..n_cols {
                a[i][j] = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}

pub fn monomial_value(m: &Monomial, pt: &[Rational; 4]) -> Rational {
    let e = m.exponents();
    let mut v = Rational::one();
    for k in 0..4 {
        for _ in 0..e[k] {
            v *= &pt[k];
        }
    }
    v
}

/// All monomials of degree `d` by brute force over exponent tuples.
pub fn monomials_brute(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d {
            for c in 0..=d {
                if a + b + c <= d {
                    out.push(Monomial([a, b, c, d - a - b - c]));
                }
            }
        }
    }
    out
}

/// Rank of the evaluation matrix of degree-`t` monomials at `points`.
pub fn hilbert_oracle(points: &[[Rational; 4]], t: u32) -> usize {
    let rows: Vec<Vec<Rational>> =
        points.iter().map(|p| monomials_brute(t).iter().map(|m| monomial_value(m, p)).collect()).collect();
    bareiss_rank(&rows)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn int_points(points: &[[i64; 4]]) -> Vec<[Rational; 4]> {
    points.iter().map(|p| p.map(q)).collect()
}

pub fn cube_coords() -> Vec<[Rational; 4]> {
    let mut v = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                v.push([q(a), q(b), q(c), q(1)]);
            }
        }
    }
    v
}

pub fn twisted_cubic_coords(params: &[i64]) -> Vec<[Rational; 4]> {
    params.iter().map(|&t| [q(1), q(t), q(t * t), q(t * t * t)]).collect()
}

/// Random form of degree `d` with small integer coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, d: u32, coeff_range: i64) -> Polynomial {
    Polynomial::from_terms(monomials_brute(d).into_iter().map(|m| (m, q(rng.gen_range(-coeff_range..=coeff_range)))))
}

/// Random form of degree `d` with rational coefficients `a/b`.
pub fn random_rational_form(rng: &mut ChaCha8Rng, d: u32) -> Polynomial {
    Polynomial::from_terms(
        monomials_brute(d)
            .into_iter()
            .map(|m| (m, Rational::new(rng.gen_range(-9..=9i64).into(), rng.gen_range(1..=5i64).into()))),
    )
}

pub fn random_skew_integer(rng: &mut ChaCha8Rng, n: usize) -> SkewPolyMatrix {
    let upper: Vec<i64> = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen_range(-9..=9)).collect();
    SkewPolyMatrix::from_integer_upper(n, &upper)
}

pub fn random_skew_forms(rng: &mut ChaCha8Rng, n: usize, d: u32) -> SkewPolyMatrix {
    let upper = (0..n * n.saturating_sub(1) / 2).map(|_| random_form(rng, d, 3)).collect();
    SkewPolyMatrix::from_upper(n, upper)
}

pub fn random_linear_matrix(rng: &mut ChaCha8Rng) -> PolyMatrix {
    PolyMatrix::from_rows((0..4).map(|_| (0..4).map(|_| random_form(rng, 1, 4)).collect()).collect()).unwrap()
}

/// Projective points of `f = 0` over `F_p`, counted as affine nonzero
/// solutions divided by `p - 1`, and whether any of them is singular.
pub fn naive_point_count(f: &Polynomial, p: u64) -> (u64, bool) {
    let reduce = |c: &Rational| -> u64 {
        let pm = BigInt::from(p);
        let n = num_integer::Integer::mod_floor(c.numer(), &pm);
        let d = num_integer::Integer::mod_floor(c.denom(), &pm);
        let d_inv = d.modpow(&BigInt::from(p - 2), &pm);
        let v = (n * d_inv) % &pm;
        u64::try_from(v).unwrap()
    };
    let terms: Vec<([u32; 4], u64)> = f.terms().map(|(m, c)| (m.exponents(), reduce(c))).collect();
    let eval = |terms: &[([u32; 4], u64)], x: &[u64; 4]| -> u64 {
        let mut acc = 0u64;
        for (e, c) in terms {
            let mut v = *c;
            for k in 0..4 {
                for _ in 0..e[k] {
                    v = v * x[k] % p;
                }
            }
            acc = (acc + v) % p;
        }
        acc
    };
    let partial = |i: usize| -> Vec<([u32; 4], u64)> {
        terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[i] -= 1;
                (e2, c * (e[i] as u64 % p) % p)
            })
            .collect()
    };
    let partials: Vec<_> = (0..4).map(partial).collect();
    let mut affine = 0u64;
    let mut singular = false;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let x = [a, b, c, d];
                    if x == [0; 4] {
                        continue;
                    }
                    if eval(&terms, &x) == 0 {
                        affine += 1;
                        if partials.iter().all(|t| eval(t, &x) == 0) {
                            singular = true;
                        }
                    }
                }
            }
        }
    }
    (affine / (p - 1), singular)
}

/// Random lattice of rank 2..=4 carrying `h` and a class `D` with
/// `D·(2h - D) = 8`, presented in a scrambled basis.
#[allow(clippy::needless_range_loop)]
pub fn random_lattice_with_c2_eight(rng: &mut ChaCha8Rng) -> (acmq::PicardLattice, acmq::DivisorClass) {
    let rank = rng.gen_range(2..=4usize);
    let mut g = vec![vec![0i64; rank]; rank];
    g[0][0] = 4;
    for i in 0..rank {
        for j in i + 1..rank {
            let v = rng.gen_range(-6..=6);
            g[i][j] = v;
            g[j][i] = v;
        }
        if i >= 2 {
            g[i][i] = 2 * rng.gen_range(-3..=2);
        }
    }
    // D = e1 with D^2 = 2 Dh - 8
    g[1][1] = 2 * g[0][1] - 8;
    let mut h = vec![0i64; rank];
    h[0] = 1;
    let mut d = vec![0i64; rank];
    d[1] = 1;
    // b'_i = b_i + c b_j: G' = U^T G U, coordinates x'_j = x_j - c x_i
    for _ in 0..rng.gen_range(0..6) {
        let i = rng.gen_range(0..rank);
        let j = rng.gen_range(0..rank);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2..=2i64);
        for r in 0..rank {
            g[r][i] += c * g[r][j];
        }
        for s in 0..rank {
            g[i][s] += c * g[j][s];
        }
        h[j] -= c * h[i];
        d[j] -= c * d[i];
    }
    let lattice = acmq::PicardLattice::new(g, h).expect("valid by construction");
    (lattice, acmq::DivisorClass::new(d))
}
