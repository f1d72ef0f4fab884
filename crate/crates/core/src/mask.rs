//! Binary masks: loading, boundary tracing and point membership.
//!
//! Cell `(row i, column j)` has its centre at the continuous point
//! `(x, y) = (j, i)`.

use std::collections::VecDeque;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::scalar::Scalar;

/// Values strictly above this are foreground when binarizing 8-bit images.
pub const DEFAULT_THRESHOLD: u8 = 127;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    cells: Vec<bool>,
}

impl BinaryMask {
    /// Row-major occupancy grid.
    pub fn new(width: usize, height: usize, cells: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimension { width, height });
        }
        if cells.len() != width * height {
            return Err(Error::LengthMismatch {
                expected: width * height,
                got: cells.len(),
            });
        }
        Ok(Self { width, height, cells })
    }

    pub fn empty(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut cells = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                cells.push(f(x, y));
            }
        }
        Self::new(width, height, cells)
    }

    /// Binarizes 8-bit grayscale values: foreground where `value > threshold`.
    pub fn from_gray(width: usize, height: usize, values: &[u8], threshold: u8) -> Result<Self> {
        Self::new(width, height, values.iter().map(|&v| v > threshold).collect())
    }

    /// Loads a mask from a `.grid`, PGM or PNG file.
    pub fn load(path: impl AsRef<Path>, threshold: u8) -> Result<Self> {
        let path = path.as_ref();
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        let bytes = fs::read(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        match ext.as_str() {
            "grid" => {
                let text = String::from_utf8(bytes).map_err(|_| Error::InvalidGrid("not valid UTF-8".into()))?;
                Self::parse_grid(&text)
            }
            "pgm" | "png" => {
                let format = if ext == "png" {
                    image::ImageFormat::Png
                } else {
                    image::ImageFormat::Pnm
                };
                let img = image::load_from_memory_with_format(&bytes, format).map_err(|e| Error::Decode {
                    path: path.to_owned(),
                    message: e.to_string(),
                })?;
                let gray = img.to_luma8();
                let (w, h) = gray.dimensions();
                Self::from_gray(w as usize, h as usize, gray.as_raw(), threshold)
            }
            other => Err(Error::UnsupportedFormat(if other.is_empty() {
                path.display().to_string()
            } else {
                format!(".{other}")
            })),
        }
    }

    /// Parses the ASCII grid format: a `width height` header followed by
    /// `height` lines of `width` whitespace-separated 0/1 tokens.
    pub fn parse_grid(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidGrid("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::InvalidGrid(format!("bad header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [width, height] = dims[..] else {
            return Err(Error::InvalidGrid(format!("bad header {header:?}")));
        };
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimension { width, height });
        }
        let mut cells = Vec::with_capacity(width * height);
        for row in 0..height {
            let line = lines
                .next()
                .ok_or_else(|| Error::InvalidGrid(format!("expected {height} rows, got {row}")))?;
            let before = cells.len();
            for tok in line.split_whitespace() {
                match tok {
                    "0" => cells.push(false),
                    "1" => cells.push(true),
                    _ => return Err(Error::InvalidGrid(format!("row {row}: bad token {tok:?}"))),
                }
            }
            if cells.len() - before != width {
                return Err(Error::InvalidGrid(format!(
                    "row {row}: expected {width} tokens, got {}",
                    cells.len() - before
                )));
            }
        }
        Self::new(width, height, cells)
    }

    pub fn to_grid_string(&self) -> String {
        let mut s = format!("{} {}\n", self.width, self.height);
        for row in self.cells.chunks(self.width) {
            let line: Vec<&str> = row.iter().map(|&c| if c { "1" } else { "0" }).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Binary PGM (P5) encoding: 255 foreground, 0 background.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.cells.iter().map(|&c| if c { 255u8 } else { 0 }));
        out
    }

    /// 8-bit grayscale PNG encoding: 255 foreground, 0 background.
    pub fn to_png(&self) -> Result<Vec<u8>> {
        use image::ImageEncoder;
        let pixels: Vec<u8> = self.cells.iter().map(|&c| if c { 255u8 } else { 0 }).collect();
        let mut out = Vec::new();
        image::codecs::png::PngEncoder::new(&mut out)
            .write_image(
                &pixels,
                self.width as u32,
                self.height as u32,
                image::ExtendedColorType::L8,
            )
            .map_err(|e| Error::Encode(e.to_string()))?;
        Ok(out)
    }

    pub fn save_pgm(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut f = fs::File::create(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        f.write_all(&self.to_pgm()).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn foreground_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Cell lookup; out-of-range indices are background.
    #[inline]
    pub fn get(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return false;
        }
        self.cells[y as usize * self.width + x as usize]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        assert!(x < self.width && y < self.height, "cell out of range");
        self.cells[y * self.width + x] = value;
    }

    /// True iff `p` rounds to an in-bounds foreground cell.
    pub fn contains<T: Scalar>(&self, p: Point2<T>) -> bool {
        if !p.is_finite() {
            return false;
        }
        let x = (p.x + T::half()).floor();
        let y = (p.y + T::half()).floor();
        match (x.to_i64(), y.to_i64()) {
            (Some(x), Some(y)) => self.get(x, y),
            _ => false,
        }
    }

    /// Cells with at least one background or out-of-bounds 4-neighbour.
    pub fn is_border_cell(&self, x: usize, y: usize) -> bool {
        let (x, y) = (x as i64, y as i64);
        self.get(x, y) && !(self.get(x - 1, y) && self.get(x + 1, y) && self.get(x, y - 1) && self.get(x, y + 1))
    }

    /// 8-connected foreground components as lists of cells, ordered by their
    /// first cell in raster order.
    pub fn components(&self) -> Vec<Vec<Cell>> {
        let mut label = vec![usize::MAX; self.cells.len()];
        let mut out: Vec<Vec<Cell>> = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.cells.len() {
            if !self.cells[start] || label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = Vec::new();
            label[start] = id;
            queue.push_back(start);
            while let Some(idx) = queue.pop_front() {
                let (x, y) = ((idx % self.width) as i64, (idx / self.width) as i64);
                members.push(Cell::new(x as usize, y as usize));
                for (dx, dy) in NEIGHBOURS {
                    let (nx, ny) = (x + dx, y + dy);
                    if self.get(nx, ny) {
                        let n = ny as usize * self.width + nx as usize;
                        if label[n] == usize::MAX {
                            label[n] = id;
                            queue.push_back(n);
                        }
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Mask holding only the given cells.
    fn restricted_to(&self, cells: &[Cell]) -> Self {
        let mut m = Self {
            width: self.width,
            height: self.height,
            cells: vec![false; self.cells.len()],
        };
        for c in cells {
            m.cells[c.y * self.width + c.x] = true;
        }
        m
    }
}

/// Integer cell coordinates (`x` = column, `y` = row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    pub fn center<T: Scalar>(self) -> Point2<T> {
        Point2::new(T::from_count(self.x), T::from_count(self.y))
    }
}

/// Ordered boundary loop of one foreground component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContourPointSet {
    pub cells: Vec<Cell>,
}

impl ContourPointSet {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn points<T: Scalar>(&self) -> Vec<Point2<T>> {
        self.cells.iter().map(|c| c.center()).collect()
    }
}

// Clockwise on screen (y down), starting west.
const NEIGHBOURS: [(i64, i64); 8] = [(-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1)];

fn direction_of(dx: i64, dy: i64) -> usize {
    NEIGHBOURS
        .iter()
        .position(|&d| d == (dx, dy))
        .expect("unit neighbour offset")
}

/// Traces the outer boundary of the largest 8-connected component with
/// Moore-neighbour tracing, clockwise on screen, starting from its
/// top-left-most cell. Each boundary cell appears once, in first-visit order.
pub fn extract_contour(mask: &BinaryMask) -> Result<ContourPointSet> {
    let components = mask.components();
    // `max_by_key` keeps the last maximum; iterate in reverse so ties go to the
    // component whose first cell comes first in raster order.
    let largest = components.iter().rev().max_by_key(|c| c.len()).ok_or(Error::NoTarget)?;
    let component = mask.restricted_to(largest);
    let start = largest[0];
    Ok(ContourPointSet {
        cells: moore_trace(&component, start),
    })
}

fn moore_trace(mask: &BinaryMask, start: Cell) -> Vec<Cell> {
    let s = (start.x as i64, start.y as i64);
    // The start is the first cell in raster order, so its west neighbour is
    // background.
    let first_move = next_boundary_step(mask, s, 0);
    let Some((first, first_back)) = first_move else {
        return vec![start];
    };

    let mut seen = std::collections::HashSet::new();
    let mut out = vec![start];
    seen.insert(s);
    let (mut cur, mut back) = (first, first_back);
    // Stop when the transition start -> first repeats.
    let limit = 8 * mask.width() * mask.height() + 8;
    for _ in 0..limit {
        if seen.insert(cur) {
            out.push(Cell::new(cur.0 as usize, cur.1 as usize));
        }
        let (next, next_back) = next_boundary_step(mask, cur, back).expect("component has more than one cell");
        if cur == s && next == first {
            break;
        }
        cur = next;
        back = next_back;
    }
    out
}

/// From `cur`, scans the 8 neighbours clockwise starting just after the
/// background neighbour in direction `back`. Returns the first foreground
/// neighbour and the direction, seen from it, of the background cell examined
/// just before it.
fn next_boundary_step(mask: &BinaryMask, cur: (i64, i64), back: usize) -> Option<((i64, i64), usize)> {
    let mut prev = (cur.0 + NEIGHBOURS[back].0, cur.1 + NEIGHBOURS[back].1);
    for k in 1..=8 {
        let (dx, dy) = NEIGHBOURS[(back + k) % 8];
        let cand = (cur.0 + dx, cur.1 + dy);
        if mask.get(cand.0, cand.1) {
            return Some((cand, direction_of(prev.0 - cand.0, prev.1 - cand.1)));
        }
        prev = cand;
    }
    None
}
