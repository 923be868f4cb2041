//! From device parameters to the coupling and CPB splitting.

use cpbnr::model::{device_to_model, DeviceParams};

fn main() {
    let base = DeviceParams {
        ej0: 1.0,
        ec: 10.0,
        ng: 0.5,
        phi_x: 0.0,
        b_field_times_length_times_x0: 0.01,
    };
    println!("{:>6} {:>6} {:>12} {:>12}", "phi_x", "N_g", "lambda0", "omega0");
    for phi_x in [0.0, 0.25, 0.5, 1.0] {
        for ng in [0.5, 0.75, 1.0] {
            let dev = DeviceParams { phi_x, ng, ..base };
            let (lambda0, omega0) = device_to_model(&dev).unwrap();
            println!("{phi_x:>6} {ng:>6} {lambda0:>12.6} {omega0:>12.6}");
        }
    }
    let bad = DeviceParams { ec: -1.0, ..base };
    println!("negative E_c: {}", device_to_model(&bad).unwrap_err());
}
