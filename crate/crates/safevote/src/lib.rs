// SPDX-License-Identifier: Apache-2.0

//! File formats, reports, SVG figures, verification campaigns and the
//! command implementations behind the `safevote` binary.

pub mod campaign;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
