mod common;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use higher_nash::multiindex::{apply_an, enumerate_lambda, MultiIndex};
use higher_nash::nashfan::{c_vector_table, is_in_s};

fn naive_index(b: &MultiIndex) -> Vec<i128> {
    (0..3).map(|i| i128::from(b.get(i))).collect()
}

#[test]
fn lambda_matches_naive_enumeration() {
    for n in 1..=6u32 {
        for t in 1..=3u32 {
            let lib: Vec<Vec<i128>> = enumerate_lambda(t, n)
                .unwrap()
                .elements
                .iter()
                .map(|b| (0..t as usize).map(|i| i128::from(b.get(i))).collect())
                .collect();
            assert_eq!(lib, common::lambda(t as usize, i128::from(n)), "t={t} n={n}");
        }
    }
}

#[test]
fn c_vectors_match_naive() {
    for n in 1..=6u32 {
        for (beta, c) in c_vector_table(n).unwrap() {
            let naive: Vec<BigInt> = common::c_vec(i128::from(n), &naive_index(&beta))
                .into_iter()
                .map(BigInt::from)
                .collect();
            assert_eq!(c, naive, "n={n} beta={beta}");
            let p = apply_an(n, &beta);
            assert_eq!(
                (p.x as i128, p.y as i128),
                common::an(i128::from(n), &naive_index(&beta))
            );
        }
    }
}

#[test]
fn membership_matches_rational_rank_on_random_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=5u32 {
        let l3 = enumerate_lambda(3, n).unwrap().elements;
        let dim = enumerate_lambda(2, n).unwrap().len();
        let mut hits = 0;
        for _ in 0..60 {
            let j: Vec<MultiIndex> = l3.choose_multiple(&mut rng, dim).cloned().collect();
            let rows: Vec<Vec<i128>> = j
                .iter()
                .map(|b| common::c_vec(i128::from(n), &naive_index(b)))
                .collect();
            let expected = common::rational_rank_full(&rows);
            assert_eq!(is_in_s(n, &j).unwrap(), expected, "n={n} J={j:?}");
            hits += usize::from(expected);
        }
        assert!(hits > 0, "n={n}: no random member found");
    }
}
