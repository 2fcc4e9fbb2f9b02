use std::collections::BTreeSet;
use std::io::BufReader;

use reviewer_game_core::equilibrium::{analyze, AnalysisOptions, StrategyProfile};
use reviewer_game_core::game::{build_current_matrix, build_proposed_matrix, compute_discount};
use reviewer_game_core::policy::checkpoint;
use reviewer_game_core::simulator::{read_records, run_experiment, RecordWriter};
use reviewer_game_core::{Bimatrix, DiscountSpec, ExperimentConfig, RewardSystem};

fn profiles(pairs: &[(usize, usize)]) -> BTreeSet<StrategyProfile> {
    pairs.iter().map(|&(r, c)| StrategyProfile::new(r, c)).collect()
}

#[test]
fn matrices_survive_the_text_format() {
    for game in [build_current_matrix(100.0, 20.0).unwrap(), build_proposed_matrix(100.0).unwrap()] {
        let back = Bimatrix::parse(&game.render()).unwrap();
        assert_eq!(back, game);
        let a = analyze(&game, &AnalysisOptions { mixed: true, ..Default::default() }).unwrap();
        let b = analyze(&back, &AnalysisOptions { mixed: true, ..Default::default() }).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn compounded_discount_feeds_the_matrix_builder() {
    let d_t = compute_discount(&DiscountSpec::compounded(0.01, 30).unwrap());
    assert!((d_t - 1.01f64.powi(30)).abs() < 1e-12);
    let game = build_current_matrix(100.0, d_t).unwrap();
    let report = analyze(&game, &AnalysisOptions::default()).unwrap();
    assert_eq!(report.strict_pure, profiles(&[(0, 0), (2, 2)]));
    assert_eq!(report.weak_pure, profiles(&[(0, 0), (1, 1), (2, 2)]));
}

#[test]
fn trained_agents_round_trip_through_checkpoints() {
    let config = ExperimentConfig {
        system: RewardSystem::Proposed,
        epochs: 150,
        hidden_width: 12,
        residual_blocks: 2,
        moving_average_window: 25,
        learning_rate: 1e-3,
        seed: 11,
        ..Default::default()
    };
    let mut agents = config.agents::<f32>().unwrap();
    let mut writer = RecordWriter::new(Vec::new()).unwrap();
    let summary = run_experiment(&config, &mut agents, |r| writer.write(r).unwrap()).unwrap();
    let records = read_records(BufReader::new(writer.finish().unwrap().as_slice())).unwrap();
    assert_eq!(records.len(), 150);
    assert_eq!(summary.full_run.unwrap().len, 150);

    let dir = tempfile::tempdir().unwrap();
    for (i, agent) in agents.iter().enumerate() {
        let path = dir.path().join(format!("agent{i}.ckpt"));
        checkpoint::save(&path, &agent.net, &agent.optimizer).unwrap();
        let (net, optimizer) = checkpoint::load::<f32>(&path).unwrap();
        assert_eq!(net, agent.net);
        assert_eq!(optimizer, agent.optimizer);
        assert!(checkpoint::load::<f64>(&path).is_err());
    }
}
