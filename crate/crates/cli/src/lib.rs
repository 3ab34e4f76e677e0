//! Library side of the command-line front end: report types and the
//! verification-suite runners, shared by the binary and the acceptance
//! tests.

pub mod report;
pub mod verify;

use classcount::boundscan::WeylDatum;
use report::VerificationReport;

/// Build a full `verify all` report inside a worker pool of the given size.
pub fn verify_all_report(
    workers: usize,
    extended: bool,
    timing: bool,
    weyl: Vec<WeylDatum>,
) -> VerificationReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool");
    let checks = pool.install(|| {
        verify::run_all(&verify::VerifyOptions {
            extended,
            weyl_data: weyl,
            timing,
        })
    });
    VerificationReport::new("verify all", checks)
}
