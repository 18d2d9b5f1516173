//! Lattice-point counts against tableau moments across admissible dilations.

use num::BigUint;

use momentlab_core::lattice::{lattice_count, PolytopeModel};
use momentlab_core::ssyt::i_moment;
use momentlab_core::Ensemble;

#[test]
fn symplectic_counts_match_moments() {
    for k in 1..=2usize {
        for (c_num, c_den) in [(1u64, 2u64), (1, 4), (3, 4), (1, 1), (3, 2)] {
            if c_num > k as u64 * c_den {
                continue;
            }
            let model = PolytopeModel::new(Ensemble::Symplectic, k, c_num, c_den).unwrap();
            for dilate in (2..=16u64).step_by(2) {
                let n = match model.target(dilate) {
                    Ok(n) => n,
                    Err(_) => continue,
                };
                let count = lattice_count(&model, dilate).unwrap();
                let expected = i_moment(Ensemble::Symplectic, k, n as usize, (dilate / 2) as usize);
                assert_eq!(
                    count, expected.value,
                    "sym k={k} c={c_num}/{c_den} dilate={dilate}"
                );
            }
        }
    }
}

#[test]
fn orthogonal_counts_match_doubled_moments() {
    for k in 1..=2usize {
        for (c_num, c_den) in [(1u64, 3u64), (2, 3), (1, 1), (4, 3), (5, 3)] {
            if c_num > k as u64 * c_den {
                continue;
            }
            let model = PolytopeModel::new(Ensemble::Orthogonal, k, c_num, c_den).unwrap();
            for dilate in (1..=15u64).step_by(2) {
                let n = match model.target(dilate) {
                    Ok(n) => n,
                    Err(_) => continue,
                };
                let count = lattice_count(&model, dilate).unwrap();
                let expected =
                    i_moment(Ensemble::Orthogonal, k, n as usize, ((dilate - 1) / 2) as usize);
                assert_eq!(
                    count * BigUint::from(2u32),
                    expected.value,
                    "orth k={k} c={c_num}/{c_den} dilate={dilate}"
                );
            }
        }
    }
}
