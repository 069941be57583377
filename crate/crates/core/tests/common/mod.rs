//! Reference implementations shared by the integration tests. None of these
//! reuse decoder internals: the generator matrix is built as an explicit
//! Kronecker power and likelihoods are evaluated by brute force.

#![allow(dead_code)]

use polar_rscl::LikelihoodPair;
use rand::Rng;

/// Dense `F^{(x)m}` with `F = [[1,0],[1,1]]`, row-major.
pub fn kronecker_generator(n: usize) -> Vec<Vec<u8>> {
    let mut g = vec![vec![1u8]];
    while g.len() < n {
        let size = g.len();
        let mut next = vec![vec![0u8; 2 * size]; 2 * size];
        for r in 0..size {
            for c in 0..size {
                next[r][c] = g[r][c];
                next[size + r][c] = g[r][c];
                next[size + r][size + c] = g[r][c];
            }
        }
        g = next;
    }
    g
}

pub fn multiply(u: &[u8], g: &[Vec<u8>]) -> Vec<u8> {
    let n = g.len();
    (0..n).map(|c| (0..n).fold(0, |acc, r| acc ^ (u[r] & g[r][c]))).collect()
}

pub fn bits_of(value: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((value >> (n - 1 - i)) & 1) as u8).collect()
}

/// `prod_i W(y_i | x_i)` in the likelihood domain.
pub fn codeword_likelihood(channel: &[LikelihoodPair], x: &[u8]) -> f64 {
    channel.iter().zip(x).map(|(p, &b)| p.get(b)).product()
}

/// Sum of codeword likelihoods over every completion of `prefix` whose
/// frozen positions are zero.
pub fn marginal(channel: &[LikelihoodPair], prefix: &[u8], frozen: &[bool], g: &[Vec<u8>]) -> f64 {
    let n = channel.len();
    (0..1usize << n)
        .map(|v| bits_of(v, n))
        .filter(|u| u[..prefix.len()] == *prefix && u.iter().zip(frozen).all(|(&b, &f)| !f || b == 0))
        .map(|u| codeword_likelihood(channel, &multiply(&u, g)))
        .sum()
}

/// The maximum-likelihood message and its likelihood.
pub fn ml_decode(channel: &[LikelihoodPair], frozen: &[bool], g: &[Vec<u8>]) -> (Vec<u8>, f64) {
    let n = channel.len();
    (0..1usize << n)
        .map(|v| bits_of(v, n))
        .filter(|u| u.iter().zip(frozen).all(|(&b, &f)| !f || b == 0))
        .map(|u| {
            let l = codeword_likelihood(channel, &multiply(&u, g));
            (u, l)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least the zero word")
}

/// Normalized random likelihood pairs.
pub fn random_pairs(rng: &mut impl Rng, n: usize) -> Vec<LikelihoodPair> {
    (0..n)
        .map(|_| {
            let p: f64 = rng.random_range(0.01..0.99);
            LikelihoodPair::new(p, 1.0 - p)
        })
        .collect()
}

pub fn ln_pairs(pairs: &[LikelihoodPair]) -> Vec<LikelihoodPair> {
    pairs.iter().map(|p| LikelihoodPair::new(p.p0.ln(), p.p1.ln())).collect()
}
