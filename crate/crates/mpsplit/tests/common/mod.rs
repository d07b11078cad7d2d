#![allow(dead_code)]

use std::fs;
use std::path::Path;

use mpsplit::idx::{encode_images, encode_labels, IdxImages, TEST_IMAGES, TEST_LABELS, TRAIN_IMAGES, TRAIN_LABELS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SIDE: usize = 4;

/// Images whose bright quadrant depends on the label, plus pixel noise, so
/// a small network can learn them.
pub fn synthetic_digits(count: usize, seed: u64) -> (IdxImages, Vec<u8>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pixels = Vec::with_capacity(count * SIDE * SIDE);
    let mut labels = Vec::with_capacity(count);
    for _ in 0..count {
        let label: u8 = rng.random_range(0..10);
        for p in 0..SIDE * SIDE {
            let lit = p % 10 == label as usize || (p + 3) % 10 == label as usize;
            let base: u8 = if lit { 200 } else { 20 };
            pixels.push(base.saturating_add(rng.random_range(0..40)));
        }
        labels.push(label);
    }
    let images = IdxImages {
        count,
        rows: SIDE,
        cols: SIDE,
        pixels,
    };
    (images, labels)
}

pub fn write_mnist_dir(dir: &Path, train: usize, test: usize) {
    fs::create_dir_all(dir).unwrap();
    let (img, lab) = synthetic_digits(train, 1);
    fs::write(dir.join(TRAIN_IMAGES), encode_images(&img)).unwrap();
    fs::write(dir.join(TRAIN_LABELS), encode_labels(&lab)).unwrap();
    let (img, lab) = synthetic_digits(test, 2);
    fs::write(dir.join(TEST_IMAGES), encode_images(&img)).unwrap();
    fs::write(dir.join(TEST_LABELS), encode_labels(&lab)).unwrap();
}
