//! Root-cloud atlases: enumerate every polynomial over a coefficient set up
//! to a degree bound, compute all roots, classify square-discriminant
//! membership exactly, and rasterize the cloud to a hit-count grid.
//!
//! Everything is deterministic. Enumeration order is degree-ascending, then
//! lexicographic in (a_0, ..., a_n) with set elements ascending. Parallel
//! accumulation works on private grids merged by integer addition, so the
//! result is independent of worker count and partitioning.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coeffset::CoeffSet;
use crate::disc::discriminant;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::find_all_roots;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    pub set: CoeffSet,
    pub max_degree: usize,
    pub center: Complex64,
    pub half_width: f64,
    pub width: usize,
    pub height: usize,
    /// Render the square-discriminant channel alone instead of the full
    /// cloud.
    pub square_only: bool,
    /// Paint pixels with square-discriminant hits red over the grey cloud.
    pub overlay: bool,
}

impl RenderConfig {
    pub fn new(
        set: CoeffSet,
        max_degree: usize,
        center: Complex64,
        half_width: f64,
        width: usize,
        height: usize,
    ) -> Result<RenderConfig> {
        let config = RenderConfig {
            set,
            max_degree,
            center,
            half_width,
            width,
            height,
            square_only: false,
            overlay: true,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 1 {
            return Err(Error::InvalidArgument("max degree must be at least 1".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidArgument("resolution must be positive".into()));
        }
        if !(self.half_width > 0.0) {
            return Err(Error::InvalidArgument("window half-width must be positive".into()));
        }
        Ok(())
    }
}

/// One computed root together with the exact classification of its source
/// polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootRecord {
    pub root: Complex64,
    pub degree: usize,
    pub disc_is_square: bool,
    pub disc_is_zero: bool,
}

/// Hit-count grids: all roots, and roots of square-discriminant
/// polynomials. Row-major, y * width + x.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    width: usize,
    height: usize,
    all: Vec<u32>,
    square: Vec<u32>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Raster {
        Raster {
            width,
            height,
            all: vec![0; width * height],
            square: vec![0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn all_counts(&self) -> &[u32] {
        &self.all
    }

    pub fn square_counts(&self) -> &[u32] {
        &self.square
    }

    fn merge(mut self, other: Raster) -> Raster {
        debug_assert_eq!((self.width, self.height), (other.width, other.height));
        for (a, b) in self.all.iter_mut().zip(&other.all) {
            *a += b;
        }
        for (a, b) in self.square.iter_mut().zip(&other.square) {
            *a += b;
        }
        self
    }

    fn add(&mut self, config: &RenderConfig, record: &RootRecord) {
        if let Some((x, y)) = pixel_of(config, record.root) {
            let i = y * self.width + x;
            self.all[i] += 1;
            if record.disc_is_square {
                self.square[i] += 1;
            }
        }
    }
}

/// Affine window-to-grid map with half-open pixel intervals; roots outside
/// the window get no pixel.
pub fn pixel_of(config: &RenderConfig, z: Complex64) -> Option<(usize, usize)> {
    let w = config.half_width;
    let fx = (z.re - config.center.re + w) / (2.0 * w) * config.width as f64;
    let fy = (config.center.im + w - z.im) / (2.0 * w) * config.height as f64;
    if !(fx >= 0.0 && fy >= 0.0) {
        return None;
    }
    let (x, y) = (fx.floor() as usize, fy.floor() as usize);
    if x >= config.width || y >= config.height {
        return None;
    }
    Some((x, y))
}

struct DegreeEnumerator {
    first: Vec<i64>,
    middle: Vec<i64>,
    last: Vec<i64>,
    degree: usize,
    indices: Vec<usize>,
    done: bool,
}

impl DegreeEnumerator {
    fn slot_len(&self, j: usize) -> usize {
        if j == 0 {
            self.first.len()
        } else if j == self.degree {
            self.last.len()
        } else {
            self.middle.len()
        }
    }

    fn slot_value(&self, j: usize) -> i64 {
        let i = self.indices[j];
        if j == 0 {
            self.first[i]
        } else if j == self.degree {
            self.last[i]
        } else {
            self.middle[i]
        }
    }
}

impl Iterator for DegreeEnumerator {
    type Item = IntPolynomial;

    fn next(&mut self) -> Option<IntPolynomial> {
        if self.done {
            return None;
        }
        let coeffs: Vec<i64> = (0..=self.degree).map(|j| self.slot_value(j)).collect();
        // Odometer step: the highest slot varies fastest, giving ascending
        // lexicographic order on (a_0, ..., a_n).
        let mut j = self.degree + 1;
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            self.indices[j] += 1;
            if self.indices[j] < self.slot_len(j) {
                break;
            }
            self.indices[j] = 0;
        }
        Some(IntPolynomial::from_i64(&coeffs))
    }
}

/// Every polynomial with coefficients in the set, nonzero constant term,
/// degree between 1 and max_degree. For negation-closed sets only the
/// positive-leading-coefficient representative is emitted: f and -f share
/// roots and discriminant square class.
pub fn enumerate_polynomials(
    set: &CoeffSet,
    max_degree: usize,
) -> impl Iterator<Item = IntPolynomial> {
    let nonzero: Vec<i64> = set.elements().iter().copied().filter(|a| *a != 0).collect();
    let leading: Vec<i64> = if set.negation_closed {
        nonzero.iter().copied().filter(|a| *a > 0).collect()
    } else {
        nonzero.clone()
    };
    let all: Vec<i64> = set.elements().to_vec();
    (1..=max_degree).flat_map(move |degree| DegreeEnumerator {
        first: nonzero.clone(),
        middle: all.clone(),
        last: leading.clone(),
        degree,
        indices: vec![0; degree + 1],
        done: false,
    })
}

/// Roots of every enumerated polynomial, tagged with the exact
/// square-discriminant classification, in enumeration order. The second
/// component counts polynomials skipped because the root finder failed;
/// classification itself is exact and cannot fail for enumerated inputs.
pub fn build_root_cloud(config: &RenderConfig) -> Result<(Vec<RootRecord>, usize)> {
    config.validate()?;
    let polys: Vec<IntPolynomial> =
        enumerate_polynomials(&config.set, config.max_degree).collect();
    let per_poly: Vec<Option<Vec<RootRecord>>> = polys
        .par_iter()
        .map(|f| {
            let degree = f.degree().expect("enumerated polynomials are nonzero");
            let roots = find_all_roots(f).ok()?;
            let d = discriminant(f).ok()?;
            Some(
                roots
                    .roots()
                    .iter()
                    .map(|&root| RootRecord {
                        root,
                        degree,
                        disc_is_square: d.is_square,
                        disc_is_zero: d.is_zero,
                    })
                    .collect(),
            )
        })
        .collect();
    let skipped = per_poly.iter().filter(|r| r.is_none()).count();
    let records: Vec<RootRecord> = per_poly.into_iter().flatten().flatten().collect();
    Ok((records, skipped))
}

/// Accumulates records onto hit-count grids. Chunked fold with private
/// grids and additive merge: the counts cannot depend on partitioning or
/// worker count.
pub fn rasterize_records(config: &RenderConfig, records: &[RootRecord]) -> Raster {
    records
        .par_chunks(8192)
        .fold(
            || Raster::new(config.width, config.height),
            |mut raster, chunk| {
                for record in chunk {
                    raster.add(config, record);
                }
                raster
            },
        )
        .reduce(|| Raster::new(config.width, config.height), Raster::merge)
}

/// Full pipeline: enumerate, solve, classify, accumulate.
pub fn rasterize(config: &RenderConfig) -> Result<(Raster, Vec<RootRecord>, usize)> {
    let (records, skipped) = build_root_cloud(config)?;
    let raster = rasterize_records(config, &records);
    Ok((raster, records, skipped))
}

/// Binary PPM (P6, 8-bit RGB). Grey level is logarithmic in the hit count
/// (white background, darker where denser); in overlay mode pixels with
/// square-discriminant hits are painted pure red. square_only renders the
/// square channel alone in grey.
pub fn render_ppm(config: &RenderConfig, raster: &Raster) -> Vec<u8> {
    let base = if config.square_only {
        raster.square_counts()
    } else {
        raster.all_counts()
    };
    let max = base.iter().copied().max().unwrap_or(0);
    let log_max = (1.0 + max as f64).ln();
    let grey = |c: u32| -> u8 {
        if max == 0 {
            return 255;
        }
        (255.0 * (1.0 - (1.0 + c as f64).ln() / log_max)).round() as u8
    };
    let mut out = format!("P6\n{} {}\n255\n", raster.width(), raster.height()).into_bytes();
    out.reserve(3 * base.len());
    for (i, &c) in base.iter().enumerate() {
        if !config.square_only && config.overlay && raster.square_counts()[i] > 0 {
            out.extend_from_slice(&[255, 0, 0]);
        } else {
            let g = grey(c);
            out.extend_from_slice(&[g, g, g]);
        }
    }
    out
}

/// CSV of the root cloud: one row per root in enumeration order,
/// 17-significant-digit floats, LF line endings.
pub fn csv_bytes(records: &[RootRecord]) -> Vec<u8> {
    let mut out = String::from("re,im,degree,disc_square,disc_zero\n");
    for r in records {
        out.push_str(&format!(
            "{:.16e},{:.16e},{},{},{}\n",
            r.root.re, r.root.im, r.degree, r.disc_is_square, r.disc_is_zero
        ));
    }
    out.into_bytes()
}

/// Writes the image and the CSV, wrapping I/O failures with the offending
/// path.
pub fn write_artifacts(
    config: &RenderConfig,
    raster: &Raster,
    records: &[RootRecord],
    image_path: &Path,
    csv_path: &Path,
) -> Result<()> {
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source: std::io::Error| Error::Io { path, source }
    };
    std::fs::write(image_path, render_ppm(config, raster)).map_err(io_err(image_path))?;
    std::fs::write(csv_path, csv_bytes(records)).map_err(io_err(csv_path))?;
    Ok(())
}
