//! Shared inputs for the benchmarks.

use equicube::{hadamard_code, iterated_code, Code, Codeword};

/// Two words of length `n` with interleaved bit patterns.
pub fn word_pair(n: usize) -> (Codeword, Codeword) {
    let a = Codeword::from_support(n, (0..n).filter(|i| i % 3 == 0));
    let b = Codeword::from_support(n, (0..n).filter(|i| i % 5 < 2));
    (a, b)
}

/// A verified code with `2^(k+1)` words of length `2^(k+1)`.
pub fn hadamard(k: u32) -> Code {
    hadamard_code(k).expect("hadamard code fits")
}

/// The code doubled by the last step of `iterated_code(q, 1)`.
pub fn doubling_input(q: u64) -> Code {
    iterated_code(q, 0).expect("iterated code fits")
}
