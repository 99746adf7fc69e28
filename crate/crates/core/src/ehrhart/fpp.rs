//! Lattice points of the half-open fundamental parallelepiped
//! `Π = {∑ λ_i (v_i, 1) : 0 <= λ_i < 1}`.
//!
//! With `U · M · V = D` the Smith form of `M = [V | 𝟙]`, the lattice points
//! of `Π` correspond to the cosets of `ℤⁿ / ℤⁿM`: the coset of `y V⁻¹` has
//! coefficient vector `λ ≡ ∑ (y_i / d_i) · U_i (mod 1)` where `U_i` is row `i`
//! of `U`. Writing `N = d_n`, every such `λ` equals `b / N` for an integer
//! vector `b ∈ [0, N)ⁿ`, and `b` is built incrementally from the residues
//! `(N / d_i) · U_i mod N`. Since `N <= |det M|` is bounded by the
//! enumeration cap, the residues fit in machine words.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix, RatVector};
use crate::par;
use crate::simplex::LatticeSimplex;

/// A lattice point of the fundamental parallelepiped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FppPoint {
    /// The point in `ℤⁿ`; its last coordinate is the height.
    pub point: Vec<BigInt>,
    pub height: usize,
    /// `λ` with `0 <= λ_i < 1` and `λ · [V | 𝟙] = point`.
    pub coeffs: RatVector,
}

/// Residue data of the cokernel `ℤⁿ / ℤⁿM`.
#[derive(Clone, Debug)]
pub(crate) struct Cokernel {
    dim: usize,
    modulus: u64,
    /// Invariant factors greater than one, with their residue steps.
    radices: Vec<u64>,
    steps: Vec<Vec<u64>>,
    total: u64,
}

pub(crate) fn check_cap(volume: &BigInt, cap: u64, what: &'static str) -> Result<u64> {
    match volume.to_u64() {
        Some(v) if v <= cap => Ok(v),
        _ => Err(Error::Infeasible {
            what,
            required: volume.clone(),
            cap,
        }),
    }
}

impl Cokernel {
    pub(crate) fn new(s: &LatticeSimplex, cap: u64) -> Result<Self> {
        let total = check_cap(&s.normalized_volume(), cap, "fundamental parallelepiped points")?;
        let snf = smith_normal_form(s.homogenized());
        let factors = snf.invariant_factors();
        let dim = factors.len();
        let modulus = factors[dim - 1].to_u64().expect("bounded by the volume");
        let big_mod = BigInt::from(modulus);
        let mut radices = Vec::new();
        let mut steps = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            if d == &BigInt::from(1) {
                continue;
            }
            let scale = &big_mod / d;
            let step = snf
                .u
                .row(i)
                .iter()
                .map(|x| {
                    let r = (scale.clone() * x) % &big_mod;
                    let r = if r < BigInt::zero() { r + &big_mod } else { r };
                    r.to_u64().expect("reduced modulo the modulus")
                })
                .collect();
            radices.push(d.to_u64().expect("divides the modulus"));
            steps.push(step);
        }
        debug_assert_eq!(radices.iter().product::<u64>(), total);
        Ok(Self {
            dim,
            modulus,
            radices,
            steps,
            total,
        })
    }

    pub(crate) fn len(&self) -> u64 {
        self.total
    }

    fn add_step(&self, b: &mut [u64], k: usize, times: u64) {
        let n = self.modulus as u128;
        for (x, s) in b.iter_mut().zip(&self.steps[k]) {
            *x = ((*x as u128 + *s as u128 * times as u128) % n) as u64;
        }
    }

    /// Mixed-radix digits and `b` for the point with the given index.
    fn seek(&self, mut index: u64) -> (Vec<u64>, Vec<u64>) {
        let mut digits = vec![0; self.radices.len()];
        let mut b = vec![0; self.dim];
        for (k, &r) in self.radices.iter().enumerate() {
            digits[k] = index % r;
            index /= r;
            self.add_step(&mut b, k, digits[k]);
        }
        (digits, b)
    }

    fn advance(&self, digits: &mut [u64], b: &mut [u64]) {
        for (k, digit) in digits.iter_mut().enumerate() {
            *digit += 1;
            // d_k · step_k ≡ 0, so a wrapped digit leaves b consistent
            self.add_step(b, k, 1);
            if *digit < self.radices[k] {
                return;
            }
            *digit = 0;
        }
    }

    fn height(&self, b: &[u64]) -> usize {
        let sum: u64 = b.iter().sum();
        debug_assert_eq!(sum % self.modulus, 0);
        (sum / self.modulus) as usize
    }

    /// Calls `visit` with the `b` vector of every point in `start..end`.
    fn for_range(&self, start: u64, end: u64, mut visit: impl FnMut(&[u64])) {
        if start >= end {
            return;
        }
        let (mut digits, mut b) = self.seek(start);
        for i in start..end {
            visit(&b);
            if i + 1 < end {
                self.advance(&mut digits, &mut b);
            }
        }
    }

    pub(crate) fn height_histogram(&self, cfg: &Config) -> Vec<u64> {
        let chunk = (self.total / 256).clamp(1024, 1 << 20);
        par::chunked_reduce(
            self.total,
            chunk,
            cfg.execution,
            |start, end| {
                let mut hist = vec![0u64; self.dim];
                self.for_range(start, end, |b| hist[self.height(b)] += 1);
                hist
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
        .unwrap_or_else(|| vec![0; self.dim])
    }

    /// All coefficient numerators `b` (with `λ = b / N`) in enumeration order.
    pub(crate) fn numerators(&self, cfg: &Config) -> Vec<Vec<u64>> {
        let chunk = (self.total / 256).clamp(256, 1 << 16);
        par::chunked_reduce(
            self.total,
            chunk,
            cfg.execution,
            |start, end| {
                let mut out = Vec::with_capacity((end - start) as usize);
                self.for_range(start, end, |b| out.push(b.to_vec()));
                out
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap_or_default()
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Streams the `|det [V | 𝟙]|` lattice points of the fundamental
/// parallelepiped. Fails if that count exceeds `cap`.
pub fn fpp_points(s: &LatticeSimplex, cap: u64) -> Result<FppPoints> {
    let cokernel = Cokernel::new(s, cap)?;
    let (digits, b) = cokernel.seek(0);
    Ok(FppPoints {
        matrix: s.homogenized().clone(),
        cokernel,
        next: 0,
        digits,
        b,
    })
}

/// Iterator returned by [`fpp_points`].
#[derive(Clone, Debug)]
pub struct FppPoints {
    matrix: IntMatrix,
    cokernel: Cokernel,
    next: u64,
    digits: Vec<u64>,
    b: Vec<u64>,
}

impl Iterator for FppPoints {
    type Item = FppPoint;

    fn next(&mut self) -> Option<FppPoint> {
        if self.next >= self.cokernel.len() {
            return None;
        }
        let n = BigInt::from(self.cokernel.modulus);
        let b: Vec<BigInt> = self.b.iter().map(|&x| BigInt::from(x)).collect();
        let scaled = self.matrix.left_mul_vec(&b).expect("shapes agree");
        let point: Vec<BigInt> = scaled
            .into_iter()
            .map(|x| {
                debug_assert!((&x % &n).is_zero());
                x / &n
            })
            .collect();
        let coeffs = RatVector::new(
            b.into_iter()
                .map(|x| BigRational::new(x, n.clone()))
                .collect(),
        );
        let height = self.cokernel.height(&self.b);
        self.next += 1;
        if self.next < self.cokernel.len() {
            self.cokernel.advance(&mut self.digits, &mut self.b);
        }
        Some(FppPoint {
            point,
            height,
            coeffs,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.cokernel.len() - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FppPoints {}

/// Number of parallelepiped points at each height `0..=d`.
pub fn fpp_height_counts(s: &LatticeSimplex, cfg: &Config) -> Result<Vec<u64>> {
    Ok(Cokernel::new(s, cfg.fpp_cap)?.height_histogram(cfg))
}
