//! Raster images, geometric preprocessing, and noise post-processing.
//!
//! All pixel math runs on `[0,1]`-scaled f64 values and is requantized to
//! 8-bit at the end. Randomized kernels draw from per-pixel counter-based
//! streams ([`rng::PixelRng`]), so output never depends on traversal order or
//! thread count.

mod noise;
mod rng;

pub use noise::{apply_noise, load_variance_map, NoiseKind, NoiseSpec, VarianceMap};

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImgprocError {
    #[error("invalid image dimensions {width}x{height} for buffer of {len} bytes")]
    BadBuffer { width: u32, height: u32, len: usize },
    #[error("image dimensions must be non-zero")]
    ZeroDimension,
    #[error("crop side {side} exceeds image dimensions {width}x{height}")]
    CropTooLarge { side: u32, width: u32, height: u32 },
    #[error("invalid noise spec: {0}")]
    InvalidNoiseSpec(String),
    #[error("variance map is {map_width}x{map_height} but image is {width}x{height}")]
    VarianceMapShape {
        map_width: u32,
        map_height: u32,
        width: u32,
        height: u32,
    },
    #[error("malformed variance map: {0}")]
    MalformedVarianceMap(String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to decode image {path}: {source}")]
    Decode {
        path: String,
        #[source]
        source: image::ImageError,
    },
    #[error("failed to encode image {path}: {source}")]
    Encode {
        path: String,
        #[source]
        source: image::ImageError,
    },
}

/// Owned 8-bit RGB image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, ImgprocError> {
        if width == 0 || height == 0 {
            return Err(ImgprocError::ZeroDimension);
        }
        if pixels.len() != width as usize * height as usize * 3 {
            return Err(ImgprocError::BadBuffer {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Constant-color image.
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity(width as usize * height as usize * 3);
        for _ in 0..width as usize * height as usize {
            pixels.extend_from_slice(&rgb);
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Reads a PNG or JPEG file and converts it to 8-bit RGB.
    pub fn load(path: &Path) -> Result<Self, ImgprocError> {
        let bytes = std::fs::read(path).map_err(|source| ImgprocError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::decode(&bytes).map_err(|source| ImgprocError::Decode {
            path: path.display().to_string(),
            source,
        })
    }

    /// Decodes PNG or JPEG bytes and converts to 8-bit RGB.
    pub fn decode(bytes: &[u8]) -> Result<Self, image::ImageError> {
        let img = image::load_from_memory(bytes)?.to_rgb8();
        let (width, height) = img.dimensions();
        Ok(Self {
            width,
            height,
            pixels: img.into_raw(),
        })
    }

    pub fn save_png(&self, path: &Path) -> Result<(), ImgprocError> {
        let img = image::RgbImage::from_raw(self.width, self.height, self.pixels.clone())
            .expect("buffer length is validated at construction");
        img.save_with_format(path, image::ImageFormat::Png)
            .map_err(|source| ImgprocError::Encode {
                path: path.display().to_string(),
                source,
            })
    }

    /// Encodes the image as PNG in memory.
    pub fn encode_png(&self) -> Vec<u8> {
        let img = image::RgbImage::from_raw(self.width, self.height, self.pixels.clone())
            .expect("buffer length is validated at construction");
        let mut out = std::io::Cursor::new(Vec::new());
        img.write_to(&mut out, image::ImageFormat::Png)
            .expect("in-memory PNG encoding cannot fail");
        out.into_inner()
    }
}

#[inline]
pub(crate) fn quantize(x: f64) -> u8 {
    (x.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Returns the centered `side`x`side` window; offsets are `floor((dim-side)/2)`.
pub fn center_crop(img: &RasterImage, side: u32) -> Result<RasterImage, ImgprocError> {
    if side == 0 {
        return Err(ImgprocError::ZeroDimension);
    }
    if side > img.width || side > img.height {
        return Err(ImgprocError::CropTooLarge {
            side,
            width: img.width,
            height: img.height,
        });
    }
    if side == img.width && side == img.height {
        return Ok(img.clone());
    }
    let x0 = ((img.width - side) / 2) as usize;
    let y0 = ((img.height - side) / 2) as usize;
    let w = img.width as usize;
    let side_us = side as usize;
    let mut pixels = Vec::with_capacity(side_us * side_us * 3);
    for y in 0..side_us {
        let start = ((y0 + y) * w + x0) * 3;
        pixels.extend_from_slice(&img.pixels[start..start + side_us * 3]);
    }
    Ok(RasterImage {
        width: side,
        height: side,
        pixels,
    })
}

/// Bilinear resize with pixel-center alignment.
pub fn resize(img: &RasterImage, width: u32, height: u32) -> Result<RasterImage, ImgprocError> {
    if width == 0 || height == 0 {
        return Err(ImgprocError::ZeroDimension);
    }
    if width == img.width && height == img.height {
        return Ok(img.clone());
    }
    let src_w = img.width as usize;
    let src_h = img.height as usize;
    let dst_w = width as usize;
    let scale_x = img.width as f64 / width as f64;
    let scale_y = img.height as f64 / height as f64;

    let row = |dy: usize, out_row: &mut [u8]| {
        let sy = (dy as f64 + 0.5) * scale_y - 0.5;
        let y0 = sy.floor();
        let ty = sy - y0;
        let y0c = (y0 as i64).clamp(0, src_h as i64 - 1) as usize;
        let y1c = (y0 as i64 + 1).clamp(0, src_h as i64 - 1) as usize;
        for dx in 0..dst_w {
            let sx = (dx as f64 + 0.5) * scale_x - 0.5;
            let x0 = sx.floor();
            let tx = sx - x0;
            let x0c = (x0 as i64).clamp(0, src_w as i64 - 1) as usize;
            let x1c = (x0 as i64 + 1).clamp(0, src_w as i64 - 1) as usize;
            for c in 0..3 {
                let p00 = img.pixels[(y0c * src_w + x0c) * 3 + c] as f64;
                let p01 = img.pixels[(y0c * src_w + x1c) * 3 + c] as f64;
                let p10 = img.pixels[(y1c * src_w + x0c) * 3 + c] as f64;
                let p11 = img.pixels[(y1c * src_w + x1c) * 3 + c] as f64;
                let top = p00 + (p01 - p00) * tx;
                let bottom = p10 + (p11 - p10) * tx;
                out_row[dx * 3 + c] = (top + (bottom - top) * ty).round().clamp(0.0, 255.0) as u8;
            }
        }
    };

    let mut pixels = vec![0u8; dst_w * height as usize * 3];
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pixels
            .par_chunks_exact_mut(dst_w * 3)
            .enumerate()
            .for_each(|(dy, out_row)| row(dy, out_row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (dy, out_row) in pixels.chunks_exact_mut(dst_w * 3).enumerate() {
            row(dy, out_row);
        }
    }
    Ok(RasterImage {
        width,
        height,
        pixels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient(w: u32, h: u32) -> RasterImage {
        let mut px = Vec::new();
        for y in 0..h {
            for x in 0..w {
                px.extend_from_slice(&[
                    (x * 255 / w.max(1)) as u8,
                    (y * 255 / h.max(1)) as u8,
                    ((x + y) % 256) as u8,
                ]);
            }
        }
        RasterImage::new(w, h, px).unwrap()
    }

    #[test]
    fn buffer_length_is_validated() {
        assert!(RasterImage::new(2, 2, vec![0; 12]).is_ok());
        assert!(matches!(
            RasterImage::new(2, 2, vec![0; 11]),
            Err(ImgprocError::BadBuffer { .. })
        ));
        assert!(matches!(
            RasterImage::new(0, 2, vec![]),
            Err(ImgprocError::ZeroDimension)
        ));
    }

    #[test]
    fn center_crop_full_size_is_identity() {
        let img = gradient(16, 16);
        assert_eq!(center_crop(&img, 16).unwrap(), img);
    }

    #[test]
    fn center_crop_floors_offsets() {
        // 4x4 image cropped to 2: offsets floor((4-2)/2) = 1, rows/cols 1..=2.
        let img = gradient(4, 4);
        let crop = center_crop(&img, 2).unwrap();
        for y in 0..2 {
            for x in 0..2 {
                assert_eq!(crop.pixel(x, y), img.pixel(x + 1, y + 1));
            }
        }
    }

    #[test]
    fn center_crop_odd_remainder() {
        // 5x5 cropped to 2: offset floor(3/2) = 1.
        let img = gradient(5, 5);
        let crop = center_crop(&img, 2).unwrap();
        assert_eq!(crop.pixel(0, 0), img.pixel(1, 1));
    }

    #[test]
    fn center_crop_rejects_oversize() {
        let img = gradient(4, 4);
        assert!(matches!(
            center_crop(&img, 5),
            Err(ImgprocError::CropTooLarge { .. })
        ));
    }

    #[test]
    fn resize_constant_stays_constant() {
        let img = RasterImage::filled(96, 96, [13, 200, 77]);
        let out = resize(&img, 32, 32).unwrap();
        assert!(out.pixels().chunks(3).all(|p| p == [13, 200, 77]));
        let up = resize(&img, 160, 160).unwrap();
        assert!(up.pixels().chunks(3).all(|p| p == [13, 200, 77]));
    }

    #[test]
    fn resize_same_size_is_identity() {
        let img = gradient(17, 9);
        assert_eq!(resize(&img, 17, 9).unwrap(), img);
    }

    #[test]
    fn resize_2x_upscale_centers() {
        // Upscaling a 2x1 black/white pair: outer output pixels clamp to the
        // nearest source sample, inner ones interpolate at t = 0.25 / 0.75.
        let img = RasterImage::new(2, 1, vec![0, 0, 0, 255, 255, 255]).unwrap();
        let out = resize(&img, 4, 1).unwrap();
        assert_eq!(out.pixel(0, 0), [0, 0, 0]);
        assert_eq!(out.pixel(1, 0), [64, 64, 64]);
        assert_eq!(out.pixel(2, 0), [191, 191, 191]);
        assert_eq!(out.pixel(3, 0), [255, 255, 255]);
    }

    #[test]
    fn png_roundtrip_preserves_pixels() {
        let img = gradient(12, 7);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.png");
        img.save_png(&path).unwrap();
        assert_eq!(RasterImage::load(&path).unwrap(), img);
    }

    #[test]
    fn jpeg_is_accepted_on_read() {
        let img = RasterImage::filled(16, 16, [120, 30, 10]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.jpg");
        let rgb = image::RgbImage::from_raw(16, 16, img.pixels().to_vec()).unwrap();
        rgb.save_with_format(&path, image::ImageFormat::Jpeg).unwrap();
        let back = RasterImage::load(&path).unwrap();
        assert_eq!((back.width(), back.height()), (16, 16));
    }
}
