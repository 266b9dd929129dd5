//! Step growth and round-trip identity of the gap conversion programs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kfo_machines::{gap_init, initial_state, run_from_state, GapDirection};
use kfo_semiring::{Element, SemiringSpec};

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<Element> {
    (0..n)
        .map(|_| Element::nat(rng.gen_range(0..4)))
        .collect()
}

#[test]
fn reverse_after_forward_is_identity_up_to_n_32() {
    let spec = SemiringSpec::nat();
    let forward = gap_init(&spec, GapDirection::Forward);
    let reverse = gap_init(&spec, GapDirection::Reverse);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 0..=32usize {
        // values deliberately include zeros and ones
        let mut values = random_values(&mut rng, n);
        if n >= 2 {
            values[0] = Element::nat(0);
            values[1] = Element::nat(1);
        }
        let start = initial_state(&spec, &values);
        let (mid, _) = run_from_state(&forward, start, 10_000_000, None).unwrap();
        let (state, _) = run_from_state(&reverse, mid, 10_000_000, None).unwrap();
        let expected = initial_state(&spec, &values);
        let lo = -(2 * n as i64 + 4);
        let hi = 2 * n as i64 + 4;
        for i in lo..=hi {
            assert_eq!(state.peek(i), expected.peek(i), "n = {n}, coordinate {i}");
        }
    }
}

#[test]
fn step_counts_grow_quadratically() {
    let spec = SemiringSpec::nat();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for direction in [GapDirection::Forward, GapDirection::Reverse] {
        let program = gap_init(&spec, direction);
        let mut steps_at = std::collections::HashMap::new();
        for n in [4usize, 8, 16, 32, 64] {
            let values = random_values(&mut rng, n);
            let state = match direction {
                GapDirection::Forward => initial_state(&spec, &values),
                GapDirection::Reverse => {
                    let fwd = gap_init(&spec, GapDirection::Forward);
                    let start = initial_state(&spec, &values);
                    run_from_state(&fwd, start, 10_000_000, None).unwrap().0
                }
            };
            let (_, stats) = run_from_state(&program, state, 10_000_000, None).unwrap();
            steps_at.insert(n, stats.steps);
        }
        for n in [8usize, 16, 32] {
            let ratio = steps_at[&(2 * n)] as f64 / steps_at[&n] as f64;
            assert!(
                ratio <= 4.5,
                "{direction:?}: steps({}) / steps({n}) = {ratio:.2} exceeds 4.5",
                2 * n
            );
        }
    }
}
