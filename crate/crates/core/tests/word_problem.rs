use std::collections::HashMap;

mod common;
use common::{all_words, burau_oracle};

use fibknot::braid::BraidWord;
use fibknot::garside::{full_twist, normal_form, words_equal};
use fibknot::invariants::reduced_burau;

fn bw(n: usize, ints: &[i32]) -> BraidWord {
    BraidWord::from_ints(n, ints).unwrap()
}

#[test]
fn b3_words_match_faithful_burau() {
    let words = all_words(&[1, -1, 2, -2], 6);
    assert_eq!(words.len(), 5461);

    let mut by_matrix: HashMap<String, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(words.len());
    let mut reps: Vec<BraidWord> = Vec::new();
    for w in &words {
        let key = format!("{:?}", burau_oracle(3, w));
        let next = by_matrix.len();
        let id = *by_matrix.entry(key).or_insert(next);
        if id == reps.len() {
            reps.push(bw(3, w));
        }
        class_of.push(id);
    }

    let mut nf_class: HashMap<_, usize> = HashMap::new();
    for (w, &id) in words.iter().zip(&class_of) {
        let nf = normal_form(&bw(3, w));
        assert!(nf.is_left_weighted());
        let prev = *nf_class.entry(nf).or_insert(id);
        assert_eq!(prev, id, "normal form shared across Burau classes by {w:?}");
    }
    assert_eq!(nf_class.len(), by_matrix.len());

    let classes = reps.len();
    for (k, (w, &id)) in words.iter().zip(&class_of).enumerate() {
        let w = bw(3, w);
        assert!(words_equal(&w, &reps[id]).unwrap());
        let other = (id + 1 + k % (classes - 1)) % classes;
        assert!(!words_equal(&w, &reps[other]).unwrap());
    }
}

#[test]
fn reduced_burau_agrees_with_oracle_classes() {
    let words = all_words(&[1, -1, 2, -2, 3, -3], 4);
    let mut seen: HashMap<String, Vec<i32>> = HashMap::new();
    for w in &words {
        let key = format!("{:?}", burau_oracle(4, w));
        match seen.get(&key) {
            Some(rep) => assert!(
                reduced_burau(&bw(4, w)) == reduced_burau(&bw(4, rep)),
                "{w:?} vs {rep:?}"
            ),
            None => {
                seen.insert(key, w.clone());
            }
        }
    }
}

#[test]
fn relations_hold_as_matrices_and_normal_forms() {
    for n in 2..=7 {
        let same = |a: &[i32], b: &[i32]| {
            let (u, v) = (bw(n, a), bw(n, b));
            assert!(
                reduced_burau(&u) == reduced_burau(&v),
                "Burau {a:?} = {b:?} on {n}"
            );
            assert!(words_equal(&u, &v).unwrap(), "normal form {a:?} = {b:?} on {n}");
        };
        let differ = |a: &[i32], b: &[i32]| {
            let (u, v) = (bw(n, a), bw(n, b));
            assert!(!words_equal(&u, &v).unwrap(), "{a:?} != {b:?} on {n}");
        };
        let delta2 = full_twist(n).unwrap().to_ints();
        for i in 1..n as i32 {
            same(&[i, -i], &[]);
            same(&[-i, i], &[]);
            differ(&[i], &[]);
            differ(&[i, i], &[]);
            let mut left = delta2.clone();
            left.push(i);
            let mut right = vec![i];
            right.extend(&delta2);
            same(&left, &right);
            for j in 1..n as i32 {
                if (i - j).abs() >= 2 {
                    same(&[i, j], &[j, i]);
                    same(&[i, -j], &[-j, i]);
                }
                if j == i + 1 {
                    same(&[i, j, i], &[j, i, j]);
                    same(&[-i, -j, -i], &[-j, -i, -j]);
                    differ(&[i, j], &[j, i]);
                }
            }
        }
    }
}

#[test]
fn normal_form_round_trip() {
    for (n, w) in [
        (3, vec![1, -2, 1, 1, -2]),
        (4, vec![3, -1, 2, 2, -3, 1]),
        (5, vec![4, -3, 2, -1, 2, -3]),
    ] {
        let w = bw(n, &w);
        let back = normal_form(&w).to_word();
        assert!(reduced_burau(&w) == reduced_burau(&back));
        assert_eq!(normal_form(&back), normal_form(&w));
    }
}

#[test]
fn strand_mismatch_is_an_error() {
    assert!(words_equal(&bw(3, &[1]), &bw(4, &[1])).is_err());
}
