use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Data for `Z[ζ_N]` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
///
/// `powers[k]` is the reduced coefficient vector of `ζ^k` for `0 <= k < N`,
/// which is all multiplication needs: products are folded mod `N` first and
/// the high powers substituted afterwards.
#[derive(Debug)]
pub struct Ring {
    modulus: u64,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl Ring {
    /// Shared ring data for `Z[ζ_N]`. Rings are built once per process.
    pub fn get(modulus: u64) -> Arc<Ring> {
        assert!(modulus > 0, "cyclotomic modulus must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Ring>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("ring cache poisoned");
        guard.entry(modulus).or_insert_with(|| Arc::new(Ring::build(modulus))).clone()
    }

    fn build(modulus: u64) -> Ring {
        let phi = cyclotomic_polynomial(modulus);
        let degree = phi.len() - 1;
        let n = modulus as usize;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ: shift, then eliminate ζ^degree using the monic Φ_N
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        Ring { modulus, phi, powers }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `φ(N)`, the rank of `Z[ζ_N]` over `Z`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Φ_N`, constant term first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.phi
    }

    pub(crate) fn power(&self, k: usize) -> &[i64] {
        &self.powers[k]
    }
}

/// `Φ_n` by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_poly_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = num.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}
