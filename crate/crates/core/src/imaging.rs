//! Grayscale rasters of sample groups.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::ttest::SampleGroup;

/// Row-major 8-bit raster; 0 is black, 255 white.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Shape {
                expected: 1,
                found: 0,
            });
        }
        let expected = width.checked_mul(height).ok_or(Error::Shape {
            expected: usize::MAX,
            found: pixels.len(),
        })?;
        if pixels.len() != expected {
            return Err(Error::Shape {
                expected,
                found: pixels.len(),
            });
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, level: u8) -> Result<Self> {
        GrayImage::new(width, height, vec![level; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    pub fn mean_level(&self) -> f64 {
        let sum: u64 = self.pixels.iter().map(|&p| u64::from(p)).sum();
        sum as f64 / self.pixels.len() as f64
    }
}

/// Linear map from sample values to gray levels: `center - half_range`
/// renders black, `center + half_range` white.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderScale {
    center: f64,
    half_range: f64,
}

impl RenderScale {
    pub fn new(center: f64, half_range: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(domain("render center", center));
        }
        if !(half_range > 0.0 && half_range.is_finite()) {
            return Err(domain("render half range", half_range));
        }
        Ok(RenderScale { center, half_range })
    }

    /// `mean ± 3 sd` of the generating distribution.
    pub fn for_generator(mean: f64, sd: f64) -> Result<Self> {
        RenderScale::new(mean, 3.0 * sd)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_range(&self) -> f64 {
        self.half_range
    }

    #[inline]
    pub fn level(&self, v: f64) -> u8 {
        let low = self.center - self.half_range;
        let scaled = 255.0 * (v - low) / (2.0 * self.half_range);
        // libm::round rounds half away from zero.
        libm::round(scaled).clamp(0.0, 255.0) as u8
    }
}

/// Fills a `width x height` raster with `samples` in row-major order.
pub fn render_group(samples: &SampleGroup, width: usize, height: usize, scale: RenderScale) -> Result<GrayImage> {
    let expected = width.saturating_mul(height);
    if samples.len() != expected {
        return Err(Error::Shape {
            expected,
            found: samples.len(),
        });
    }
    let pixels = samples.values().iter().map(|&v| scale.level(v)).collect();
    GrayImage::new(width, height, pixels)
}

/// Places `left` and `right` side by side with a white gutter between them.
pub fn compose_pair(left: &GrayImage, right: &GrayImage, separator_width: usize) -> Result<GrayImage> {
    if left.height != right.height {
        return Err(Error::Shape {
            expected: left.height,
            found: right.height,
        });
    }
    let width = left.width + separator_width + right.width;
    let mut pixels = Vec::with_capacity(width * left.height);
    for y in 0..left.height {
        pixels.extend_from_slice(left.row(y));
        pixels.extend(core::iter::repeat(255u8).take(separator_width));
        pixels.extend_from_slice(right.row(y));
    }
    GrayImage::new(width, left.height, pixels)
}

pub const DEFAULT_SEPARATOR: usize = 4;
