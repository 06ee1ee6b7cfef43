//! Gcd over `Q` by reduction modulo word-size primes.
//!
//! Both inputs are scaled to primitive integer polynomials `A`, `B`. For each
//! prime the monic gcd mod `p` is scaled by `gamma = gcd(lc A, lc B)` and the
//! images are combined by CRT. Once the symmetric lift stops changing it is
//! accepted only if its primitive part divides `A` and `B` exactly, so the
//! result never depends on a prime being lucky.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Poly;
use crate::field::Rationals;

const TOP: u64 = 1 << 31;
const WINDOW: u64 = 1 << 16;

/// Primes in `[2^31 - 2^16, 2^31)`, largest first (about 3000 of them).
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let lo = TOP - WINDOW;
        let mut composite = vec![false; WINDOW as usize];
        let mut d = 2;
        while d * d < TOP {
            let first = lo.div_ceil(d) * d;
            for k in (first..TOP).step_by(d as usize) {
                composite[(k - lo) as usize] = true;
            }
            d += 1;
        }
        (lo..TOP).rev().filter(|&n| !composite[(n - lo) as usize]).collect()
    })
}

fn primitive_integer(c: &[BigRational]) -> Vec<BigInt> {
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &content).collect()
}

fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    c.iter().map(|x| x.mod_floor(&pb).to_u64().expect("residue below p")).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn make_monic(v: &mut [u64], p: u64) {
    let inv = inv_mod(*v.last().expect("nonzero"), p);
    for c in v.iter_mut() {
        *c = *c * inv % p;
    }
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        if c != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + (p - c) * bj) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&mut a, p);
    a
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let half: BigInt = m >> 1;
    if c > &half {
        c - m
    } else {
        c.clone()
    }
}

/// Monic gcd of two nonzero polynomials over `Q`, or `None` if no answer was
/// certified within the prime budget.
pub(crate) fn rational_gcd(a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (ai, bi) = (primitive_integer(a), primitive_integer(b));
    let (la, lb) = (ai.last()?.clone(), bi.last()?.clone());
    let gamma = la.gcd(&lb);
    let as_poly = |c: &[BigInt]| Poly::new(Rationals, c.iter().cloned().map(BigRational::from_integer).collect());
    let (pa, pb) = (as_poly(&ai), as_poly(&bi));

    // CRT state: coefficients mod `modulus` of gamma * (monic gcd).
    let mut image: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last_lift: Option<Vec<BigInt>> = None;
    for &p in primes() {
        let pbig = BigInt::from(p);
        if (&la % &pbig).is_zero() || (&lb % &pbig).is_zero() {
            continue;
        }
        let mut g = gcd_mod(reduce(&ai, p), reduce(&bi, p), p);
        if g.len() == 1 {
            return Some(vec![BigRational::one()]);
        }
        let gm = reduce(std::slice::from_ref(&gamma), p)[0];
        for c in g.iter_mut() {
            *c = *c * gm % p;
        }
        match &mut image {
            Some((cur, m)) if cur.len() == g.len() => {
                // x = cur + m * ((g - cur) * m^{-1} mod p)
                let minv = inv_mod((&*m % &pbig).to_u64().expect("residue"), p);
                for (c, &gi) in cur.iter_mut().zip(&g) {
                    let cp = (&*c % &pbig).to_u64().expect("residue");
                    *c += &*m * BigInt::from((gi + p - cp) % p * minv % p);
                }
                *m *= &pbig;
            }
            // This prime sees a spurious common factor.
            Some((cur, _)) if cur.len() < g.len() => continue,
            // First prime, or every earlier prime was unlucky.
            _ => {
                image = Some((g.into_iter().map(BigInt::from).collect(), pbig.clone()));
                last_lift = None;
            }
        }

        let (cur, m) = image.as_ref().expect("set above");
        let lift: Vec<BigInt> = cur.iter().map(|c| symmetric(c, m)).collect();
        if last_lift.as_ref() == Some(&lift) {
            let cand = as_poly(&primitive_integer(
                &lift.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>(),
            ));
            if cand.divides(&pa) && cand.divides(&pb) {
                return Some(cand.monic().into_coeffs());
            }
        }
        last_lift = Some(lift);
    }
    None
}

fn residues(c: &[BigRational], p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    c.iter()
        .map(|x| {
            let den = x.denom().mod_floor(&pb).to_u64()?;
            let num = x.numer().mod_floor(&pb).to_u64()?;
            (den != 0).then(|| num * inv_mod(den, p) % p)
        })
        .collect()
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn div_rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        q[top - db] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                a[top - db + j] = (a[top - db + j] + (p - c) * bj) % p;
            }
        }
        a.pop();
    }
    trim(&mut a);
    trim(&mut q);
    (q, a)
}

/// `a^{-1} mod m` over `F_p`, if `gcd(a, m) = 1` there.
fn inverse_mod_p(a: Vec<u64>, m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), a);
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem_mod(r0, &r1, p);
        let qt = mul_mod(&q, &t1, p);
        let mut t = t0.clone();
        t.resize(t.len().max(qt.len()), 0);
        for (x, y) in t.iter_mut().zip(&qt) {
            *x = (*x + p - y) % p;
        }
        trim(&mut t);
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = inv_mod(r0[0], p);
    Some(t0.into_iter().map(|x| x * inv % p).collect())
}

/// `a/b` with `|a|, b <= sqrt(m/2)` and `a = b c mod m`, if one exists.
fn reconstruct(c: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), c.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        (r0, r1) = (r1, r);
        let t = &t0 - &q * &t1;
        (t0, t1) = (t1, t);
    }
    (!t1.is_zero() && t1.abs() <= bound).then(|| BigRational::new(r1, t1))
}

/// `a^{-1} mod m` over `Q` for coprime `a`, `m` with `deg m >= 1`, by CRT and
/// rational reconstruction, checked exactly before it is returned.
fn rational_inverse_mod(a: &Poly<Rationals>, m: &Poly<Rationals>) -> Option<Poly<Rationals>> {
    let dm = m.degree()?;
    let a = a.rem(m).ok()?;
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut used = 0usize;
    for &p in primes() {
        let (Some(ap), Some(mp)) = (residues(a.coeffs(), p), residues(m.coeffs(), p)) else {
            continue;
        };
        if mp.last() == Some(&0) {
            continue;
        }
        let mut ap = ap;
        trim(&mut ap);
        let Some(mut inv) = inverse_mod_p(ap, &mp, p) else {
            continue;
        };
        inv.resize(dm, 0);
        let pbig = BigInt::from(p);
        match &mut acc {
            None => acc = Some((inv.into_iter().map(BigInt::from).collect(), pbig)),
            Some((cur, modulus)) => {
                let minv = inv_mod((&*modulus % &pbig).to_u64().expect("residue"), p);
                for (c, &x) in cur.iter_mut().zip(&inv) {
                    let cp = (&*c % &pbig).to_u64().expect("residue");
                    *c += &*modulus * BigInt::from((x + p - cp) % p * minv % p);
                }
                *modulus *= &pbig;
            }
        }
        used += 1;
        if used.is_power_of_two() {
            let (cur, modulus) = acc.as_ref().expect("set above");
            let cand: Option<Vec<BigRational>> = cur.iter().map(|c| reconstruct(c, modulus)).collect();
            if let Some(cand) = cand {
                let r = Poly::new(Rationals, cand);
                if (&r * &a).rem(m).ok()?.is_one() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Extended gcd over `Q` with the cofactors Euclid would return:
/// `d = r a + s b`, `deg r < deg(b/d)`, `deg s < deg(a/d)`. `None` for the
/// degenerate cases, which Euclid handles cheaply.
pub(crate) fn rational_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> Option<(Vec<BigRational>, Vec<BigRational>, Vec<BigRational>)> {
    let (a, b) = (Poly::new(Rationals, a.to_vec()), Poly::new(Rationals, b.to_vec()));
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let d = a.gcd(&b).ok()?;
    let a1 = a.exact_div(&d).ok()??;
    let b1 = b.exact_div(&d).ok()??;
    if a1.is_constant() || b1.is_constant() {
        return None;
    }
    let r = rational_inverse_mod(&a1, &b1)?;
    let s = (&Poly::one(Rationals) - &(&r * &a1)).exact_div(&b1).ok()??;
    Some((d.into_coeffs(), r.into_coeffs(), s.into_coeffs()))
}
