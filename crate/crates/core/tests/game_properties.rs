use proptest::prelude::*;

use teamup::game::{
    best_response_set, considered_best_response, profiles, pure_nash_equilibria,
    reciprocal_best_response, Game, GameDescription, Lemonade, MatrixGame, Metric,
};

fn all_triples() -> impl Iterator<Item = [usize; 3]> {
    (0..12).flat_map(|a| (0..12).flat_map(move |b| (0..12).map(move |c| [a, b, c])))
}

/// Arc from `from` clockwise to `to`, in steps.
fn arc(from: usize, to: usize) -> usize {
    (to + 12 - from) % 12
}

#[test]
fn every_triple_sums_to_24() {
    for p in all_triples() {
        assert_eq!(Lemonade.utilities(&p).iter().sum::<f64>(), 24.0, "{p:?}");
    }
}

#[test]
fn distinct_triples_pay_adjacent_arcs() {
    for p in all_triples().filter(|p| p[0] != p[1] && p[1] != p[2] && p[0] != p[2]) {
        let u = Lemonade.utilities(&p);
        for i in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&j| j != i).map(|j| p[j]).collect();
            let cw = others.iter().map(|&o| arc(p[i], o)).min().unwrap();
            let acw = others.iter().map(|&o| arc(o, p[i])).min().unwrap();
            assert_eq!(u[i], (cw + acw) as f64, "{p:?} player {i}");
        }
    }
}

#[test]
fn response_sets_nest_over_every_profile() {
    for p in all_triples() {
        for i in 0..3 {
            let br = best_response_set(&Lemonade, i, &p).unwrap();
            assert!(!br.is_empty());
            let values: Vec<f64> = br
                .iter()
                .map(|&a| {
                    let mut q = p;
                    q[i] = a;
                    Lemonade.utilities(&q)[i]
                })
                .collect();
            let max = (0..12)
                .map(|a| {
                    let mut q = p;
                    q[i] = a;
                    Lemonade.utilities(&q)[i]
                })
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(values.iter().all(|&v| v == max));
            for j in (0..3).filter(|&j| j != i) {
                let considered = considered_best_response(&Lemonade, i, j, &p).unwrap();
                assert!(!considered.is_empty());
                assert!(considered.iter().all(|a| br.contains(a)));
                let reciprocal = reciprocal_best_response(&Lemonade, i, j, &p).unwrap();
                assert!(reciprocal.iter().all(|a| considered.contains(a)));
            }
        }
    }
}

#[test]
fn ring_metric_axioms() {
    let d = |a, b| Lemonade.distance(a, b);
    for a in 0..12 {
        assert_eq!(d(a, a), 0.0);
        for b in 0..12 {
            assert_eq!(d(a, b), d(b, a));
            assert!(a == b || d(a, b) > 0.0);
            for c in 0..12 {
                assert!(d(a, c) <= d(a, b) + d(b, c));
            }
        }
    }
}

fn is_fixed_point<G: Game>(game: &G, p: &[usize]) -> bool {
    (0..game.num_players()).all(|i| best_response_set(game, i, p).unwrap().contains(&p[i]))
}

#[test]
fn lemonade_equilibria_are_response_fixed_points() {
    let ne = pure_nash_equilibria(&Lemonade).unwrap();
    let fixed: Vec<Vec<usize>> = profiles(&Lemonade)
        .filter(|p| is_fixed_point(&Lemonade, p))
        .collect();
    assert_eq!(ne, fixed);
}

fn matrix_game() -> impl Strategy<Value = MatrixGame> {
    (2usize..=3)
        .prop_flat_map(|n| prop::collection::vec(1usize..=4, n))
        .prop_flat_map(|actions| {
            let rows: usize = actions.iter().product();
            let n = actions.len();
            (
                Just(actions),
                prop::collection::vec(prop::collection::vec(0u8..4, n), rows),
            )
        })
        .prop_map(|(actions, payoffs)| {
            MatrixGame::new(GameDescription {
                name: None,
                actions,
                payoffs: payoffs
                    .into_iter()
                    .map(|row| row.into_iter().map(f64::from).collect())
                    .collect(),
                metric: Metric::Discrete,
                constant_sum: None,
            })
            .unwrap()
        })
}

proptest! {
    #[test]
    fn matrix_equilibria_are_response_fixed_points(game in matrix_game()) {
        let ne = pure_nash_equilibria(&game).unwrap();
        let fixed: Vec<Vec<usize>> = profiles(&game).filter(|p| is_fixed_point(&game, p)).collect();
        prop_assert_eq!(ne, fixed);
    }

    #[test]
    fn matrix_response_sets_nest(game in matrix_game()) {
        let n = game.num_players();
        for p in profiles(&game) {
            for i in 0..n {
                let br = best_response_set(&game, i, &p).unwrap();
                prop_assert!(!br.is_empty());
                for j in (0..n).filter(|&j| j != i) {
                    let considered = considered_best_response(&game, i, j, &p).unwrap();
                    prop_assert!(considered.iter().all(|a| br.contains(a)));
                    let reciprocal = reciprocal_best_response(&game, i, j, &p).unwrap();
                    prop_assert!(reciprocal.iter().all(|a| considered.contains(a)));
                }
            }
        }
    }

    #[test]
    fn pairwise_best_response_is_never_empty(game in matrix_game(), a in 0usize..4) {
        let n = game.num_players();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let action = a % game.num_actions(j);
                let br = game.pairwise_best_response(i, j, action);
                prop_assert!(!br.is_empty());
                prop_assert!(br.iter().all(|&x| x < game.num_actions(i)));
            }
        }
    }
}
