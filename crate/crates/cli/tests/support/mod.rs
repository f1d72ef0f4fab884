//! Synthetic mask sequences written to disk for the CLI tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotbox::eval::format_octuple;
use rotbox::synth::{boundary_noise, rasterize_convex, rotated_rect};
use rotbox::{BinaryMask, Point64, RotatedBox64};

pub struct Sequence {
    pub dir: PathBuf,
    pub masks: Vec<BinaryMask>,
    pub truth: Vec<RotatedBox64>,
    pub gt_path: PathBuf,
}

/// `frames` noisy elongated rectangles drifting and turning across a
/// 127×127 frame, saved as `frame_000.pgm`, ... with `groundtruth.txt`.
pub fn write_sequence(root: &Path, frames: usize, seed: u64) -> Sequence {
    let dir = root.join("masks");
    std::fs::create_dir_all(&dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut masks, mut truth) = (Vec::new(), Vec::new());
    let mut gt_text = String::new();
    for i in 0..frames {
        let t = i as f64 / frames.max(1) as f64;
        let center = Point64::new(50.0 + 25.0 * t, 60.0 + 5.0 * (6.0 * t).sin());
        let long = rng.random_range(40.0..60.0);
        let aspect = rng.random_range(2.0..4.0);
        let r = rotated_rect(center, long, long / aspect, 0.3 + 2.5 * t);
        let clean = rasterize_convex(127, 127, &r.corners).unwrap();
        let mask = boundary_noise(&clean, 0.05, &mut rng);
        mask.save_pgm(dir.join(format!("frame_{i:03}.pgm"))).unwrap();
        gt_text.push_str(&format_octuple(&r));
        gt_text.push('\n');
        masks.push(mask);
        truth.push(r);
    }
    let gt_path = root.join("groundtruth.txt");
    std::fs::write(&gt_path, gt_text).unwrap();
    Sequence {
        dir,
        masks,
        truth,
        gt_path,
    }
}

/// Runs the CLI in-process; returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["rotbox"];
    full.extend_from_slice(args);
    let code = rotbox_cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}
