mod common;

use std::time::{Duration, Instant};

use common::game;
use proptest::prelude::*;
use yulgc_core::game::{ExploreOptions, Params, DAY};
use yulgc_core::Word;

const FIXTURES: &[&str] = &[
    "two_functions",
    "bank_patched",
    "counter",
    "timelock",
    "token",
    "hidden_gate",
    "bank",
];

fn params() -> impl Strategy<Value = (usize, Params)> {
    (
        0..FIXTURES.len(),
        0u32..4,
        0u32..4,
        1u32..3,
        prop_oneof![Just(0u64), Just(DAY), Just(7 * DAY)],
        0u64..4,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(
            |(f, call_bound, stack_bound, opponents, wait, waits, wait_first, zero_value)| {
                let mut p = Params {
                    call_bound,
                    stack_bound,
                    opponent_addresses: opponents,
                    wait_time: Word::from(wait),
                    max_wait: Word::from(wait * waits + wait / 2),
                    wait_first,
                    ..Params::default()
                };
                if zero_value {
                    p.deploy_value = Word::ZERO;
                }
                (f, p)
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn explored_traces_respect_the_bounds((f, p) in params()) {
        let g = game(FIXTURES[f], p.clone());
        let start = g.initial_config().unwrap();
        let r = g.explore(start, ExploreOptions {
            jobs: 1,
            deadline: Some(Instant::now() + Duration::from_secs(2)),
        });
        let s = r.stats;
        prop_assert!(s.max_calls_per_function <= p.call_bound);
        prop_assert!(s.max_open_calls <= p.stack_bound);
        let max_wait: u64 = p.max_wait.try_into().unwrap();
        let wait: u64 = p.wait_time.try_into().unwrap();
        prop_assert!(s.max_total_wait <= max_wait);
        match max_wait.checked_div(wait) {
            None => prop_assert_eq!(s.max_waits, 0),
            Some(most) => {
                prop_assert!(u64::from(s.max_waits) <= most);
                prop_assert_eq!(s.max_total_wait, u64::from(s.max_waits) * wait);
            }
        }
        if p.call_bound == 0 || p.stack_bound == 0 {
            prop_assert_eq!(s.first_level_calls, 0);
        }
    }
}
