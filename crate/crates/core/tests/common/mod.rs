#![allow(dead_code)]

use std::path::PathBuf;

use yulgc_core::game::{Config, ExploreOptions, Game, Move, Params, Report, Stats, Step};
use yulgc_core::state::KeccakOracle;
use yulgc_core::Word;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn read_fixture(name: &str) -> (String, String) {
    let dir = fixture_dir();
    let yul = std::fs::read_to_string(dir.join(format!("{name}.yul"))).expect("fixture .yul");
    let abi = std::fs::read_to_string(dir.join(format!("{name}.json"))).expect("fixture .json");
    (yul, abi)
}

pub fn game(name: &str, params: Params) -> Game {
    let (yul, abi) = read_fixture(name);
    Game::new(&yul, &abi, params, KeccakOracle::default()).expect("fixture loads")
}

pub fn explore(game: &Game) -> Report {
    let start = game.initial_config().expect("initial config");
    game.explore(
        start,
        ExploreOptions {
            jobs: 1,
            deadline: None,
        },
    )
}

/// Fixtures that violate, with the parameter changes they need.
pub fn violating() -> Vec<(&'static str, Params)> {
    let zero_value = Params {
        deploy_value: Word::ZERO,
        ..Params::default()
    };
    vec![
        ("bank", Params::default()),
        ("reveal_gate", Params::default()),
        ("counter", Params::default()),
        ("timelock", Params::default()),
        ("proxy", Params::default()),
        ("deployer", Params::default()),
        ("library", Params::default()),
        (
            "price_oracle",
            Params {
                opponent_return_values: true,
                ..Params::default()
            },
        ),
        ("crowdsale", zero_value),
        ("token", Params::default()),
    ]
}

/// Applies forced moves until a branch point or the end of the trace.
pub fn advance(game: &Game, cfg: &mut Config) -> Vec<Move> {
    let mut stats = Stats::default();
    loop {
        let moves = game.moves(cfg);
        if moves.len() != 1 {
            return moves;
        }
        match game.apply(cfg, &moves[0], &mut stats, &|| false) {
            Step::Continue => {}
            other => panic!("forced move ended the trace: {other:?}"),
        }
    }
}
