//! Power-of-two FFT and the chirp (Bluestein) transform for arbitrary lengths.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// `exp(2πi · k / n)` evaluated from the reduced fraction, not by repeated products.
#[inline]
pub(crate) fn unit_root(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    let (s, c) = libm::sincos(2.0 * PI * (k as f64) / (n as f64));
    Complex64::new(c, s)
}

/// `table[k] = exp(2πi k / n)` for `k` in `[0, n)`.
pub(crate) fn unit_roots(n: u64) -> Vec<Complex64> {
    (0..n).map(|k| unit_root(k, n)).collect()
}

/// In-place iterative radix-2 FFT. `sign = -1` is the forward transform
/// `X[k] = sum x[j] e^{-2πi jk/n}`; `sign = +1` the unnormalized inverse.
pub(crate) fn fft_pow2(data: &mut [Complex64], sign: i32) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length {n} is not a power of two");
    if n <= 1 {
        return;
    }
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    let roots = unit_roots(n as u64);
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let mut w = roots[k * stride];
                if sign < 0 {
                    w = w.conj();
                }
                let u = data[start + k];
                let v = data[start + k + len / 2] * w;
                data[start + k] = u + v;
                data[start + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }
}

/// `X[n] = sum_t x[t] · exp(+2πi nt / q)` for any length `q`, via
/// `nt = (n² + t² − (n−t)²) / 2` and one power-of-two convolution.
pub(crate) fn chirp_transform(input: &[Complex64]) -> Vec<Complex64> {
    let q = input.len();
    if q == 0 {
        return Vec::new();
    }
    let two_q = 2 * q as u64;
    // chirp[k] = exp(πi k² / q) = unit_root(k² mod 2q, 2q)
    let chirp: Vec<Complex64> = (0..q as u64)
        .map(|k| unit_root(((k as u128 * k as u128) % two_q as u128) as u64, two_q))
        .collect();
    let len = (2 * q - 1).next_power_of_two();
    let mut a = vec![Complex64::new(0.0, 0.0); len];
    for (t, (&x, &w)) in input.iter().zip(&chirp).enumerate() {
        a[t] = x * w;
    }
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    b[0] = chirp[0].conj();
    for k in 1..q {
        b[k] = chirp[k].conj();
        b[len - k] = chirp[k].conj();
    }
    fft_pow2(&mut a, -1);
    fft_pow2(&mut b, -1);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= *y;
    }
    fft_pow2(&mut a, 1);
    let scale = 1.0 / len as f64;
    (0..q).map(|n| a[n] * scale * chirp[n]).collect()
}
