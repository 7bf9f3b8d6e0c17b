//! The worked example from the README: exact module spectra and a
//! spectral mixing bound at a size far beyond enumeration.

use walkspectra::analysis::{schedule, spectral_tv_upper_bound};
use walkspectra::spectra::{tt2r_spectrum, IrrepLabel};
use walkspectra::Walk;

fn main() -> Result<(), walkspectra::Error> {
    // Exact eigenvalues of the tt2r walk on one module of A_18.
    let label: IrrepLabel = "17.1".parse()?;
    for entry in tt2r_spectrum(&label)?.entries {
        println!("eigenvalue {} with multiplicity {}", entry.value, entry.count);
    }

    // Spectral bound on the distance to uniform at the scheduled step
    // count, far beyond the n <= 9 range where A_n can be enumerated.
    let n = 40;
    let k = schedule(Walk::TransposeTop2, n, 0.0);
    println!("{}", spectral_tv_upper_bound(Walk::TransposeTop2, n, k)?);
    Ok(())
}
