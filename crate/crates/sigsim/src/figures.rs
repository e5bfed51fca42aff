use sigsim_core::imaging::DEFAULT_SEPARATOR;
use sigsim_core::simlab::regenerate_pair;
use sigsim_core::{compose_pair, render_group, GrayImage, RenderScale, RunReport};

/// Rendered images of one size's near-threshold pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFigure {
    pub size: usize,
    pub trial_index: u32,
    pub left: GrayImage,
    pub right: GrayImage,
    pub pair: GrayImage,
}

impl PairFigure {
    pub fn file_names(&self) -> [(String, &GrayImage); 3] {
        [
            (format!("size_{}_left.pgm", self.size), &self.left),
            (format!("size_{}_right.pgm", self.size), &self.right),
            (format!("size_{}_pair.pgm", self.size), &self.pair),
        ]
    }
}

/// Regenerates and renders the selected pair of every size that has one.
/// Both halves share the generator's `mean ± 3 sd` scale.
pub fn render_selected(report: &RunReport) -> sigsim_core::Result<Vec<PairFigure>> {
    let config = &report.config;
    let scale = RenderScale::for_generator(config.gen_mean, config.gen_sd)?;
    let mut figures = Vec::new();
    for (size_index, row) in report.summaries.iter().enumerate() {
        let Some(trial_index) = row.selected_trial else {
            continue;
        };
        let (a, b) = regenerate_pair(config, size_index, trial_index)?;
        let left = render_group(&a, row.width, row.height, scale)?;
        let right = render_group(&b, row.width, row.height, scale)?;
        let pair = compose_pair(&left, &right, DEFAULT_SEPARATOR)?;
        figures.push(PairFigure {
            size: row.size,
            trial_index,
            left,
            right,
            pair,
        });
    }
    Ok(figures)
}
