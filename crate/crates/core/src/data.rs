//! Input data: the bundled files or a directory holding the same names.

use std::fs;
use std::io;
use std::path::Path;

pub const SURFACE: &str = "surface.poly";
pub const AUTOMORPHISM: &str = "automorphism.poly";
pub const POINTS: &str = "points.dat";
pub const E10_BASIS: &str = "e10_basis.dat";

#[derive(Clone, Debug)]
pub struct DataFiles {
    pub surface: String,
    pub automorphism: String,
    pub points: String,
    pub e10_basis: String,
}

impl DataFiles {
    pub fn bundled() -> DataFiles {
        DataFiles {
            surface: include_str!("../data/surface.poly").to_string(),
            automorphism: include_str!("../data/automorphism.poly").to_string(),
            points: include_str!("../data/points.dat").to_string(),
            e10_basis: include_str!("../data/e10_basis.dat").to_string(),
        }
    }

    pub fn from_dir(dir: &Path) -> io::Result<DataFiles> {
        let read = |name: &str| {
            fs::read_to_string(dir.join(name))
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", dir.join(name).display())))
        };
        Ok(DataFiles {
            surface: read(SURFACE)?,
            automorphism: read(AUTOMORPHISM)?,
            points: read(POINTS)?,
            e10_basis: read(E10_BASIS)?,
        })
    }
}
