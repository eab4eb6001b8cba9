use divsum::complex::BigComplex;
use divsum::precision::PrecisionContext;
use divsum::series::{partial_sums, SeriesFamily, SumConvention};
use divsum::transforms::{delta_sequence, weniger_delta};
use rug::Rational;

fn main() {
    let ctx = PrecisionContext::new(80).unwrap();
    let z = BigComplex::from_real(ctx.int(1));
    let fs = partial_sums(&SeriesFamily::Euler, &z, 32, SumConvention::Raw, &ctx).unwrap();
    let gamma = Rational::from(1);
    for k in [1usize, 2, 5, 10, 15, 20, 30] {
        let d = weniger_delta(&fs, 0, k, &gamma, &ctx).unwrap();
        println!("delta_{k} = {}", d.re.to_string_radix(10, Some(30)));
    }
    let seq = delta_sequence(&fs, 0, 5, &gamma, &ctx).unwrap();
    for (k, v) in seq.iter().enumerate() {
        println!("seq {k}: {}", v.re.to_f64());
    }
}
