//! Subset sum to conjugacy and back.
//!
//! `cargo run --example reduction_chain`

use polyconj::conjugacy::search_conjugator;
use polyconj::format::{serialize_instance, InstanceFile};
use polyconj::reductions::{ReductionChain, SspInstance};
use polyconj::Result;

fn main() -> Result<()> {
    let ssp = SspInstance::from_i64s(&[3, 5, 7], 12)?;
    let chain = ReductionChain::new(&ssp);

    print!("{}", serialize_instance(&InstanceFile::Ssp(ssp.clone())));
    print!("{}", serialize_instance(&InstanceFile::SspPrime(chain.sspprime.clone())));
    print!("{}", serialize_instance(&InstanceFile::Tssp(chain.tssp.clone())));
    print!("{}", serialize_instance(&InstanceFile::Conj(chain.conjugacy.clone())));

    let c = &chain.conjugacy;
    let cert = search_conjugator(&c.ctx, &c.u, &c.v)?.expect("the subset {5, 7} sums to 12");
    println!("conjugator {cert}");
    let x = chain.pullback_conjugator(&cert.w)?;
    println!("subset {x}, solves source: {}", ssp.is_solved_by(&x));
    Ok(())
}
