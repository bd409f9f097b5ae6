// Hazes a generated scene with a depth ramp, dehazes it, and writes all three images.
//
//   demo_synthetic [out_dir]

#include <filesystem>
#include <iostream>

#include "rsvt/eval/metrics.hpp"
#include "rsvt/eval/synth.hpp"
#include "rsvt/io.hpp"
#include "rsvt/rsvt.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    const fs::path out = argc > 1 ? argv[1] : ".";
    fs::create_directories(out);

    const int w = 320, h = 200, horizon = 80;
    rsvt::RgbImage clean(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (y < horizon) {
                clean.r(x, y) = 0.55 + 0.1 * y / horizon;
                clean.g(x, y) = 0.7 + 0.05 * y / horizon;
                clean.b(x, y) = 0.84;
            } else {
                const bool brick = ((x / 16) + (y / 10)) % 2 == 0;
                clean.r(x, y) = brick ? 0.45 : 0.2;
                clean.g(x, y) = brick ? 0.3 : 0.35;
                clean.b(x, y) = brick ? 0.2 : 0.15;
            }
        }
    }
    const rsvt::GrayMap t = rsvt::eval::depth_ramp(w, h, 0.6, 0.8);
    const rsvt::RgbImage hazy = rsvt::eval::synthesize_haze(clean, t, rsvt::Airlight::gray(0.92));

    const rsvt::DehazeOutput o = rsvt::dehaze(hazy);
    rsvt::save_image(clean, out / "clean.png");
    rsvt::save_image(hazy, out / "hazy.png");
    rsvt::save_image(o.restored, out / "restored.png");
    rsvt::save_gray(o.mask.m, out / "mask.png");

    std::cout << "airlight " << o.airlight.rgb.r << ' ' << o.airlight.rgb.g << ' ' << o.airlight.rgb.b << '\n'
              << "hazy     PSNR " << rsvt::eval::psnr(hazy, clean) << '\n'
              << "restored PSNR " << rsvt::eval::psnr(o.restored, clean) << '\n';
}
