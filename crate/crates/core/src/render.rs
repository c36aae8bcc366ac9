//! Binary PPM (P6) rendering of a field: white where `u > 0`, dark gray
//! where `u ≤ 0` or masked, black on cells crossed by a contour.
//!
//! Pixel `(i, row)` shows node `(i, ny - 1 - row)` and the cell whose
//! lower-left corner is that node, so row 0 is the top of the window.

use crate::field::{Contour, ScalarField};

pub const WHITE: [u8; 3] = [255, 255, 255];
pub const GRAY: [u8; 3] = [64, 64, 64];
pub const BLACK: [u8; 3] = [0, 0, 0];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TractImage {
    pub width: usize,
    pub height: usize,
    /// Row-major RGB, top row first.
    pub rgb: Vec<u8>,
}

impl TractImage {
    pub fn pixel(&self, x: usize, row: usize) -> [u8; 3] {
        let k = 3 * (row * self.width + x);
        [self.rgb[k], self.rgb[k + 1], self.rgb[k + 2]]
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.rgb);
        out
    }
}

pub fn render(field: &ScalarField, contours: &[Contour]) -> TractImage {
    let w = &field.window;
    let (nx, ny) = (w.nx, w.ny);
    let mut crossed = vec![false; nx * ny];
    for c in contours {
        for seg in c.points.windows(2) {
            let mid = 0.5 * (seg[0] + seg[1]);
            let i = ((mid.re - w.x_min) / w.dx())
                .floor()
                .clamp(0.0, (nx - 2) as f64) as usize;
            let j = ((mid.im - w.y_min) / w.dy())
                .floor()
                .clamp(0.0, (ny - 2) as f64) as usize;
            crossed[w.index(i, j)] = true;
        }
    }
    let mut rgb = Vec::with_capacity(3 * nx * ny);
    for row in 0..ny {
        let j = ny - 1 - row;
        for i in 0..nx {
            let k = w.index(i, j);
            let px = if crossed[k] {
                BLACK
            } else if field.is_positive(k, 0.0) {
                WHITE
            } else {
                GRAY
            };
            rgb.extend_from_slice(&px);
        }
    }
    TractImage {
        width: nx,
        height: ny,
        rgb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{extract_contours, Window};

    #[test]
    fn constant_field_is_all_white() {
        let w = Window::new(0.0, 1.0, 0.0, 1.0, 4, 3).unwrap();
        let f = ScalarField::from_fn(w, |_| Some(1.0)).unwrap();
        let img = render(&f, &extract_contours(&f, 0.0));
        let ppm = img.to_ppm();
        let mut golden = b"P6\n4 3\n255\n".to_vec();
        golden.extend([255u8; 36]);
        assert_eq!(ppm, golden);
    }

    #[test]
    fn top_row_is_y_max() {
        let w = Window::square(-1.0, 1.0, -1.0, 1.0, 21).unwrap();
        let f = ScalarField::from_fn(w, |z| Some(z.im)).unwrap();
        let img = render(&f, &extract_contours(&f, 0.0));
        assert_eq!(img.pixel(0, 0), WHITE);
        assert_eq!(img.pixel(0, 20), GRAY);
        // the contour y = 0 runs through the cells just below it
        assert!((0..20).all(|x| img.pixel(x, 10) == BLACK || img.pixel(x, 11) == BLACK));
    }
}
