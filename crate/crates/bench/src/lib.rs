//! Inputs shared by the benchmarks.

use frieze_core::polygon::enumerate_triangulations;
use frieze_core::EtaSeq;

/// The first `count` quiddity sequences of length `n` in enumeration order.
pub fn sample_quiddities(n: usize, count: usize) -> Vec<EtaSeq> {
    enumerate_triangulations(n, n)
        .expect("n >= 3")
        .quiddities()
        .take(count)
        .map(|q| EtaSeq::new(q).expect("enumerated sequences are valid"))
        .collect()
}

/// A sequence of length `n` grown from `(1, 1, 1)` by expanding near the
/// middle, so its frieze has large entries.
pub fn long_quiddity(n: usize) -> EtaSeq {
    let mut q = EtaSeq::base();
    while q.len() < n {
        let gap = (q.len() / 2) % q.len();
        q = q.expand(gap).expect("gap in range").rotate(1);
    }
    q
}
