use vesselgen_core::geom::Point2;
use vesselgen_core::raster::{distance_transform, skeletonize};
use vesselgen_core::skeleton::{SkeletonParams, SkeletonRaster};
use vesselgen_core::synthesis::{generate_sample, SynthesisParams};

#[test]
fn tip_debug() {
    let skel = SkeletonParams {
        max_depth: 4,
        root_position: Point2::new(128.0, 128.0),
        root_length: 60.0,
        canvas_width: 256,
        canvas_height: 256,
        seed: 2,
        ..SkeletonParams::default()
    };
    let synth = SynthesisParams { width_root: 3.5, seed: 2, ..SynthesisParams::default() };
    let target = generate_sample(&skel, &synth).unwrap().0.mask;
    let sk_mask = skeletonize(&target);
    let sk = SkeletonRaster::from_mask(&sk_mask);
    let dt = distance_transform(&target);
    for c in sk.chains.iter().take(4) {
        let first = c.pixels[0];
        let last = *c.pixels.last().unwrap();
        eprintln!("chain {} len {} first {:?} last {:?}", c.node_id, c.pixels.len(), first, last);
    }
    // walk from the chain-0 first pixel outward toward (128,128)
    let c0 = &sk.chains[0];
    eprintln!("c0 first 8 pixels: {:?}", &c0.pixels[..8.min(c0.pixels.len())]);
    let tip = c0.pixels[0];
    let nb = |x: u32, y: u32| {
        let mut n = 0;
        for dy in -1i64..=1 { for dx in -1i64..=1 {
            if (dx != 0 || dy != 0) && sk_mask.get_i(x as i64 + dx, y as i64 + dy) { n += 1; }
        }}
        n
    };
    eprintln!("tip {:?} neighbors {} dt {}", tip, nb(tip.0, tip.1), dt[(tip.1 * 256 + tip.0) as usize]);
    for (px, py) in [(136u32,137u32),(134,135),(132,133),(130,131),(128,129),(128,128),(127,127)] {
        eprintln!("dt({px},{py}) = {:.2} target {}", dt[(py*256+px) as usize], target.get(px,py));
    }
}
