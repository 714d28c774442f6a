//! Inputs shared by the benchmarks.

use stickforge_core::conway::{parse, ConwayNotation};

/// One notation per construction shape, from small to the top of the tested range.
pub fn sample_notations() -> Vec<ConwayNotation> {
    ["6", "2,3,2", "1,1,4", "2,1,1,1,2", "10", "1,1,2,4,2"].into_iter().map(|s| parse(s).unwrap()).collect()
}

/// Odd-length notation of twos (with one 1 or 3 to fix parity) summing to `c >= 2`.
pub fn chain(c: u32) -> ConwayNotation {
    let mut entries = vec![2; (c / 2) as usize];
    match (c % 2, entries.len() % 2) {
        (0, 1) => {}
        (0, _) => {
            entries.pop();
            entries.extend([1, 1]);
        }
        (_, 0) => entries.push(1),
        _ => *entries.last_mut().unwrap() = 3,
    }
    ConwayNotation::new(entries).unwrap()
}

#[cfg(test)]
mod tests {
    #[test]
    fn chain_has_the_requested_crossings() {
        for c in 2..40 {
            assert_eq!(super::chain(c).crossing_number(), c);
        }
    }
}
