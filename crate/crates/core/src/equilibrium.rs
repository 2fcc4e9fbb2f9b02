//! Exhaustive analysis of finite bimatrix games: best responses, dominant
//! strategies, pure equilibria (weak and strict), mixed equilibria by support
//! enumeration, and Pareto-efficient profiles.
//!
//! Every comparison between payoffs goes through an absolute tolerance so that
//! payoffs produced by arithmetic (discounts, scaling) still tie when they
//! should. Two payoffs closer than the tolerance are treated as equal.

use std::collections::BTreeSet;
use std::fmt;

use crate::bimatrix::Bimatrix;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Support enumeration is exponential; games larger than this are refused.
pub const SUPPORT_ENUM_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    /// Player 1, chooses the row.
    Row,
    /// Player 2, chooses the column.
    Col,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile {
    pub row: usize,
    pub col: usize,
}

impl StrategyProfile {
    pub fn new(row: usize, col: usize) -> Self {
        StrategyProfile { row, col }
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    pub row_dist: Vec<f64>,
    pub col_dist: Vec<f64>,
}

impl MixedProfile {
    /// Indices carrying probability above `threshold`.
    pub fn supports(&self, threshold: f64) -> (Vec<usize>, Vec<usize>) {
        let s = |d: &[f64]| d.iter().enumerate().filter(|(_, &p)| p > threshold).map(|(i, _)| i).collect();
        (s(&self.row_dist), s(&self.col_dist))
    }

    /// The pure profile this mixed profile plays with certainty, if any.
    pub fn as_pure(&self, tolerance: f64) -> Option<StrategyProfile> {
        let pick = |d: &[f64]| d.iter().position(|&p| (p - 1.0).abs() <= tolerance);
        Some(StrategyProfile::new(pick(&self.row_dist)?, pick(&self.col_dist)?))
    }

    /// Expected payoffs `(u1, u2)`.
    pub fn expected_payoffs(&self, game: &Bimatrix) -> (f64, f64) {
        let mut u = (0.0, 0.0);
        for (i, &x) in self.row_dist.iter().enumerate() {
            for (j, &y) in self.col_dist.iter().enumerate() {
                let (a, b) = game.cell(i, j);
                u.0 += x * y * a;
                u.1 += x * y * b;
            }
        }
        u
    }

    fn close_to(&self, other: &MixedProfile, tolerance: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tolerance);
        close(&self.row_dist, &other.row_dist) && close(&self.col_dist, &other.col_dist)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NashMode {
    /// No unilateral deviation strictly improves the deviator.
    Weak,
    /// Every unilateral deviation strictly hurts the deviator.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominant {
    pub strategy: usize,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub strict_pure: BTreeSet<StrategyProfile>,
    pub weak_pure: BTreeSet<StrategyProfile>,
    /// `None` when mixed enumeration was not requested.
    pub mixed: Option<Vec<MixedProfile>>,
    pub pareto: BTreeSet<StrategyProfile>,
    pub dominant_row: Option<Dominant>,
    pub dominant_col: Option<Dominant>,
    pub dominant_pair: Option<StrategyProfile>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub tolerance: f64,
    pub mixed: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { tolerance: DEFAULT_TOLERANCE, mixed: false }
    }
}

/// Payoff to `player` for playing `own` against `opponent`.
fn payoff(game: &Bimatrix, player: Player, own: usize, opponent: usize) -> f64 {
    match player {
        Player::Row => game.payoff1()[own][opponent],
        Player::Col => game.payoff2()[opponent][own],
    }
}

fn strategy_count(game: &Bimatrix, player: Player) -> usize {
    match player {
        Player::Row => game.rows(),
        Player::Col => game.cols(),
    }
}

fn opponent(player: Player) -> Player {
    match player {
        Player::Row => Player::Col,
        Player::Col => Player::Row,
    }
}

/// All strategies of `player` that maximize its payoff against `opponent_choice`.
pub fn best_responses(game: &Bimatrix, player: Player, opponent_choice: usize, tolerance: f64) -> Result<Vec<usize>> {
    let count = strategy_count(game, opponent(player));
    if opponent_choice >= count {
        return Err(Error::StrategyOutOfRange { index: opponent_choice, count });
    }
    let n = strategy_count(game, player);
    let best = (0..n).map(|s| payoff(game, player, s, opponent_choice)).fold(f64::NEG_INFINITY, f64::max);
    Ok((0..n).filter(|&s| payoff(game, player, s, opponent_choice) >= best - tolerance).collect())
}

fn survives(game: &Bimatrix, player: Player, own: usize, opp: usize, mode: NashMode, tolerance: f64) -> bool {
    let here = payoff(game, player, own, opp);
    (0..strategy_count(game, player)).filter(|&s| s != own).all(|s| {
        let there = payoff(game, player, s, opp);
        match mode {
            NashMode::Weak => there <= here + tolerance,
            NashMode::Strict => there < here - tolerance,
        }
    })
}

pub fn pure_nash(game: &Bimatrix, mode: NashMode, tolerance: f64) -> BTreeSet<StrategyProfile> {
    let mut out = BTreeSet::new();
    for i in 0..game.rows() {
        for j in 0..game.cols() {
            if survives(game, Player::Row, i, j, mode, tolerance) && survives(game, Player::Col, j, i, mode, tolerance) {
                out.insert(StrategyProfile::new(i, j));
            }
        }
    }
    out
}

/// A strategy that is a best response to every opponent strategy. Among
/// several (only possible with ties) the lowest index is reported.
pub fn dominant_strategy(game: &Bimatrix, player: Player, tolerance: f64) -> Option<Dominant> {
    let n = strategy_count(game, player);
    let m = strategy_count(game, opponent(player));
    let weakly = |s: usize| {
        (0..m).all(|o| (0..n).all(|t| payoff(game, player, t, o) <= payoff(game, player, s, o) + tolerance))
    };
    let strictly = |s: usize| {
        (0..m).all(|o| (0..n).filter(|&t| t != s).all(|t| payoff(game, player, t, o) < payoff(game, player, s, o) - tolerance))
    };
    (0..n).find(|&s| weakly(s)).map(|s| Dominant { strategy: s, strict: strictly(s) })
}

/// When both players have a dominant strategy, the pair of them, which is
/// always a (weak) pure equilibrium.
pub fn dominant_pair_is_nash(game: &Bimatrix, tolerance: f64) -> Option<StrategyProfile> {
    let row = dominant_strategy(game, Player::Row, tolerance)?;
    let col = dominant_strategy(game, Player::Col, tolerance)?;
    let profile = StrategyProfile::new(row.strategy, col.strategy);
    assert!(
        pure_nash(game, NashMode::Weak, tolerance).contains(&profile),
        "dominant pair {profile} is not a weak equilibrium"
    );
    Some(profile)
}

/// Profiles that no other profile Pareto-dominates.
pub fn pareto_efficient(game: &Bimatrix, tolerance: f64) -> BTreeSet<StrategyProfile> {
    let cells: Vec<(StrategyProfile, (f64, f64))> = (0..game.rows())
        .flat_map(|i| (0..game.cols()).map(move |j| (StrategyProfile::new(i, j), game.cell(i, j))))
        .collect();
    let dominates = |q: (f64, f64), p: (f64, f64)| {
        q.0 >= p.0 - tolerance && q.1 >= p.1 - tolerance && (q.0 > p.0 + tolerance || q.1 > p.1 + tolerance)
    };
    cells
        .iter()
        .filter(|(_, p)| !cells.iter().any(|(_, q)| dominates(*q, *p)))
        .map(|(s, _)| *s)
        .collect()
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
/// Returns `None` for (numerically) singular systems.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            let (upper, lower) = a.split_at_mut(r);
            for (dst, &src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst -= factor * src;
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - tail) / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Finds the distribution over `mix_support` (strategies of the mixing
/// player) that makes the other player indifferent across `other_support`.
/// `value(other, mixer)` is the other player's payoff.
fn indifference(
    mix_support: &[usize],
    other_support: &[usize],
    mix_count: usize,
    value: impl Fn(usize, usize) -> f64,
    tolerance: f64,
) -> Option<Vec<f64>> {
    let k = mix_support.len();
    // Unknowns: k probabilities followed by the common payoff.
    let mut a = Vec::with_capacity(k + 1);
    let mut b = Vec::with_capacity(k + 1);
    for &o in other_support {
        let mut row: Vec<f64> = mix_support.iter().map(|&s| value(o, s)).collect();
        row.push(-1.0);
        a.push(row);
        b.push(0.0);
    }
    let mut norm = vec![1.0; k];
    norm.push(0.0);
    a.push(norm);
    b.push(1.0);
    let solution = solve_linear(a, b)?;
    if solution[..k].iter().any(|&p| p < -tolerance) {
        return None;
    }
    let mut dist = vec![0.0; mix_count];
    for (&s, &p) in mix_support.iter().zip(&solution) {
        dist[s] = p.max(0.0);
    }
    let total: f64 = dist.iter().sum();
    if total <= 0.0 {
        return None;
    }
    dist.iter_mut().for_each(|p| *p /= total);
    Some(dist)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

/// Mixed equilibria by enumerating every pair of equal-size supports and
/// solving the indifference conditions. Pure equilibria appear as
/// degenerate (1x1 support) profiles. Results are de-duplicated within
/// `tolerance`.
pub fn mixed_nash_support_enum(game: &Bimatrix, tolerance: f64) -> Result<Vec<MixedProfile>> {
    let (m, n) = (game.rows(), game.cols());
    if m > SUPPORT_ENUM_LIMIT || n > SUPPORT_ENUM_LIMIT {
        return Err(Error::SizeLimit { rows: m, cols: n, limit: SUPPORT_ENUM_LIMIT });
    }
    let a = game.payoff1();
    let b = game.payoff2();
    let mut found: Vec<MixedProfile> = Vec::new();
    for rows in subsets(m) {
        for cols in subsets(n).filter(|c| c.len() == rows.len()) {
            // Row player's mix makes the column player indifferent over `cols`.
            let Some(x) = indifference(&rows, &cols, m, |j, i| b[i][j], tolerance) else { continue };
            let Some(y) = indifference(&cols, &rows, n, |i, j| a[i][j], tolerance) else { continue };
            let profile = MixedProfile { row_dist: x, col_dist: y };
            if is_mixed_equilibrium(game, &profile, tolerance) && !found.iter().any(|p| p.close_to(&profile, tolerance.max(1e-9)))
            {
                found.push(profile);
            }
        }
    }
    Ok(found)
}

/// True when no pure deviation improves either player's expected payoff.
pub fn is_mixed_equilibrium(game: &Bimatrix, profile: &MixedProfile, tolerance: f64) -> bool {
    let (u1, u2) = profile.expected_payoffs(game);
    let row_ok = (0..game.rows()).all(|i| {
        let v: f64 = profile.col_dist.iter().enumerate().map(|(j, &y)| y * game.payoff1()[i][j]).sum();
        v <= u1 + tolerance
    });
    let col_ok = (0..game.cols()).all(|j| {
        let v: f64 = profile.row_dist.iter().enumerate().map(|(i, &x)| x * game.payoff2()[i][j]).sum();
        v <= u2 + tolerance
    });
    row_ok && col_ok
}

pub fn analyze(game: &Bimatrix, options: &AnalysisOptions) -> Result<EquilibriumReport> {
    let tol = options.tolerance;
    let mixed = if options.mixed { Some(mixed_nash_support_enum(game, tol)?) } else { None };
    Ok(EquilibriumReport {
        strict_pure: pure_nash(game, NashMode::Strict, tol),
        weak_pure: pure_nash(game, NashMode::Weak, tol),
        mixed,
        pareto: pareto_efficient(game, tol),
        dominant_row: dominant_strategy(game, Player::Row, tol),
        dominant_col: dominant_strategy(game, Player::Col, tol),
        dominant_pair: dominant_pair_is_nash(game, tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_current_matrix, build_proposed_matrix};
    use proptest::prelude::*;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn set(pairs: &[(usize, usize)]) -> BTreeSet<StrategyProfile> {
        pairs.iter().map(|&(r, c)| StrategyProfile::new(r, c)).collect()
    }

    fn constant_game() -> Bimatrix {
        Bimatrix::from_cells(&vec![vec![(1.0, 1.0); 3]; 3]).unwrap()
    }

    fn matching_pennies() -> Bimatrix {
        Bimatrix::from_cells(&[vec![(1.0, -1.0), (-1.0, 1.0)], vec![(-1.0, 1.0), (1.0, -1.0)]]).unwrap()
    }

    fn prisoners_dilemma() -> Bimatrix {
        Bimatrix::from_cells(&[vec![(3.0, 3.0), (0.0, 5.0)], vec![(5.0, 0.0), (1.0, 1.0)]]).unwrap()
    }

    #[test]
    fn best_response_examples() {
        let proposed = build_proposed_matrix(100.0).unwrap();
        assert_eq!(best_responses(&proposed, Player::Row, 1, TOL).unwrap(), vec![1]);
        let current = build_current_matrix(100.0, 20.0).unwrap();
        assert_eq!(best_responses(&current, Player::Row, 1, TOL).unwrap(), vec![0, 1, 2]);
        assert_eq!(best_responses(&constant_game(), Player::Col, 2, TOL).unwrap(), vec![0, 1, 2]);
        assert!(matches!(
            best_responses(&current, Player::Col, 3, TOL),
            Err(Error::StrategyOutOfRange { index: 3, count: 3 })
        ));
    }

    #[test]
    fn best_responses_of_column_player_read_payoff2() {
        let g = Bimatrix::from_cells(&[vec![(0.0, 1.0), (0.0, 5.0)], vec![(0.0, 7.0), (0.0, 2.0)]]).unwrap();
        assert_eq!(best_responses(&g, Player::Col, 0, TOL).unwrap(), vec![1]);
        assert_eq!(best_responses(&g, Player::Col, 1, TOL).unwrap(), vec![0]);
    }

    #[test]
    fn pure_nash_examples() {
        let current = build_current_matrix(100.0, 20.0).unwrap();
        assert_eq!(pure_nash(&current, NashMode::Strict, TOL), set(&[(0, 0), (2, 2)]));
        assert_eq!(pure_nash(&current, NashMode::Weak, TOL), set(&[(0, 0), (1, 1), (2, 2)]));
        let proposed = build_proposed_matrix(100.0).unwrap();
        assert_eq!(pure_nash(&proposed, NashMode::Strict, TOL), set(&[(0, 0), (1, 1), (2, 2)]));
        assert!(pure_nash(&matching_pennies(), NashMode::Weak, TOL).is_empty());
    }

    #[test]
    fn strict_theorem_holds_over_discount_grid() {
        for k in 1..1000 {
            let d_t = k as f64 * 0.1;
            let current = build_current_matrix(100.0, d_t).unwrap();
            assert_eq!(pure_nash(&current, NashMode::Strict, TOL), set(&[(0, 0), (2, 2)]), "d_t = {d_t}");
        }
    }

    #[test]
    fn matching_pennies_has_single_uniform_mix() {
        let mixed = mixed_nash_support_enum(&matching_pennies(), TOL).unwrap();
        assert_eq!(mixed.len(), 1);
        for p in mixed[0].row_dist.iter().chain(&mixed[0].col_dist) {
            assert!((p - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_enumeration_rediscovers_pure_equilibria() {
        let proposed = build_proposed_matrix(1.0).unwrap();
        let mixed = mixed_nash_support_enum(&proposed, TOL).unwrap();
        let pure: BTreeSet<_> = mixed.iter().filter_map(|m| m.as_pure(1e-12)).collect();
        assert_eq!(pure, set(&[(0, 0), (1, 1), (2, 2)]));
        for m in &mixed {
            assert!(is_mixed_equilibrium(&proposed, m, TOL));
        }
    }

    #[test]
    fn mixed_enumeration_respects_strict_dominance() {
        let pd = prisoners_dilemma();
        let mixed = mixed_nash_support_enum(&pd, TOL).unwrap();
        assert!(!mixed.is_empty());
        for m in mixed {
            assert_eq!(m.row_dist, vec![0.0, 1.0]);
            assert_eq!(m.col_dist, vec![0.0, 1.0]);
        }
    }

    #[test]
    fn mixed_enumeration_size_limit() {
        let big = Bimatrix::from_cells(&vec![vec![(0.0, 0.0); 5]; 2]).unwrap();
        assert!(matches!(mixed_nash_support_enum(&big, TOL), Err(Error::SizeLimit { .. })));
        let edge = Bimatrix::from_cells(&vec![vec![(0.0, 0.0); 4]; 4]).unwrap();
        assert!(mixed_nash_support_enum(&edge, TOL).is_ok());
    }

    #[test]
    fn dominance_examples() {
        let g = Bimatrix::from_cells(&[vec![(2.0, 0.0), (2.0, 0.0)], vec![(1.0, 0.0), (1.0, 0.0)]]).unwrap();
        assert_eq!(dominant_strategy(&g, Player::Row, TOL), Some(Dominant { strategy: 0, strict: true }));
        let proposed = build_proposed_matrix(100.0).unwrap();
        assert_eq!(dominant_strategy(&proposed, Player::Row, TOL), None);
        assert_eq!(
            dominant_strategy(&constant_game(), Player::Row, TOL),
            Some(Dominant { strategy: 0, strict: false })
        );
    }

    #[test]
    fn dominant_pair_examples() {
        assert_eq!(dominant_pair_is_nash(&prisoners_dilemma(), TOL), Some(StrategyProfile::new(1, 1)));
        assert!(pure_nash(&prisoners_dilemma(), NashMode::Weak, TOL).contains(&StrategyProfile::new(1, 1)));
        assert_eq!(dominant_pair_is_nash(&build_current_matrix(100.0, 20.0).unwrap(), TOL), None);
        assert_eq!(dominant_pair_is_nash(&constant_game(), TOL), Some(StrategyProfile::new(0, 0)));
    }

    #[test]
    fn pareto_examples() {
        let proposed = build_proposed_matrix(100.0).unwrap();
        assert_eq!(pareto_efficient(&proposed, TOL), set(&[(0, 0), (1, 1), (2, 2)]));
        let current = build_current_matrix(100.0, 20.0).unwrap();
        assert_eq!(pareto_efficient(&current, TOL), set(&[(0, 0), (2, 2)]));
        assert_eq!(pareto_efficient(&constant_game(), TOL).len(), 9);
    }

    #[test]
    fn analyze_assembles_report() {
        let report = analyze(&build_current_matrix(100.0, 20.0).unwrap(), &AnalysisOptions { mixed: true, ..Default::default() })
            .unwrap();
        assert!(report.strict_pure.is_subset(&report.weak_pure));
        assert!(report.mixed.as_ref().is_some_and(|m| !m.is_empty()));
        assert_eq!(report.dominant_row, None);
        assert_eq!(report.dominant_pair, None);
    }

    #[test]
    fn linear_solver_handles_pivoting_and_singularity() {
        let x = solve_linear(vec![vec![0.0, 1.0], vec![2.0, 0.0]], vec![3.0, 4.0]).unwrap();
        assert_eq!(x, vec![2.0, 3.0]);
        assert!(solve_linear(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }

    fn small_game() -> impl Strategy<Value = Bimatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
            proptest::collection::vec((-4i32..=4, -4i32..=4), m * n).prop_map(move |cells| {
                let rows: Vec<Vec<(f64, f64)>> =
                    cells.chunks(n).map(|r| r.iter().map(|&(a, b)| (a as f64, b as f64)).collect()).collect();
                Bimatrix::from_cells(&rows).unwrap()
            })
        })
    }

    fn support_sets(profiles: &[MixedProfile]) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
        profiles.iter().map(|p| p.supports(1e-7)).collect()
    }

    proptest! {
        #[test]
        fn strict_is_subset_of_weak(game in small_game()) {
            let strict = pure_nash(&game, NashMode::Strict, TOL);
            let weak = pure_nash(&game, NashMode::Weak, TOL);
            prop_assert!(strict.is_subset(&weak));
            for p in &strict {
                prop_assert!(survives(&game, Player::Row, p.row, p.col, NashMode::Strict, TOL));
                prop_assert!(survives(&game, Player::Col, p.col, p.row, NashMode::Strict, TOL));
            }
        }

        #[test]
        fn weak_nash_equals_mutual_best_responses(game in small_game()) {
            let weak = pure_nash(&game, NashMode::Weak, TOL);
            for i in 0..game.rows() {
                for j in 0..game.cols() {
                    let mutual = best_responses(&game, Player::Row, j, TOL).unwrap().contains(&i)
                        && best_responses(&game, Player::Col, i, TOL).unwrap().contains(&j);
                    prop_assert_eq!(mutual, weak.contains(&StrategyProfile::new(i, j)));
                }
            }
        }

        #[test]
        fn translation_and_scaling_invariance(game in small_game(), shift in -5i32..=5, scale in 1i32..=4, who in 1usize..=2) {
            let shifted = game.map_payoffs(|p, v| if p == who { v + shift as f64 } else { v }).unwrap();
            let scaled = game.map_payoffs(|p, v| if p == who { v * scale as f64 } else { v }).unwrap();
            for variant in [&shifted, &scaled] {
                for mode in [NashMode::Weak, NashMode::Strict] {
                    prop_assert_eq!(pure_nash(&game, mode, TOL), pure_nash(variant, mode, TOL));
                }
                for player in [Player::Row, Player::Col] {
                    prop_assert_eq!(dominant_strategy(&game, player, TOL), dominant_strategy(variant, player, TOL));
                }
            }
            let base = mixed_nash_support_enum(&game, TOL).unwrap();
            let moved = mixed_nash_support_enum(&shifted, TOL).unwrap();
            prop_assert_eq!(support_sets(&base), support_sets(&moved));
        }

        #[test]
        fn strict_pure_equilibria_appear_in_mixed_enumeration(game in small_game()) {
            let mixed = mixed_nash_support_enum(&game, TOL).unwrap();
            for p in pure_nash(&game, NashMode::Strict, TOL) {
                prop_assert!(mixed.iter().any(|m| m.as_pure(1e-12) == Some(p)));
            }
            for m in &mixed {
                prop_assert!(is_mixed_equilibrium(&game, m, TOL));
                let total: f64 = m.row_dist.iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
                let total: f64 = m.col_dist.iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn strictly_dominant_strategy_gets_full_weight(game in small_game()) {
            let mixed = mixed_nash_support_enum(&game, TOL).unwrap();
            if let Some(Dominant { strategy, strict: true }) = dominant_strategy(&game, Player::Row, TOL) {
                for m in &mixed {
                    prop_assert!((m.row_dist[strategy] - 1.0).abs() < 1e-9);
                }
            }
            if let Some(Dominant { strategy, strict: true }) = dominant_strategy(&game, Player::Col, TOL) {
                for m in &mixed {
                    prop_assert!((m.col_dist[strategy] - 1.0).abs() < 1e-9);
                }
            }
        }
    }
}
