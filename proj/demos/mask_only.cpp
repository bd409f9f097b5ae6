// Soft segmentation on an in-memory image, no codecs: prints the share of each region.

#include <iostream>

#include "rsvt/softseg.hpp"

int main() {
    rsvt::RgbImage img(160, 120);
    for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 160; ++x) {
            const double v = y < 50 ? 0.9 : 0.15 + 0.1 * ((x / 4 + y / 4) % 2);
            img.r(x, y) = img.g(x, y) = img.b(x, y) = v;
        }

    const rsvt::SoftSegResult seg = rsvt::compute_mask(img, rsvt::SoftSegParams{});
    std::size_t counts[3] = {};
    for (std::size_t i = 0; i < seg.mask.size(); ++i) ++counts[static_cast<int>(seg.mask.region(i))];
    const double n = static_cast<double>(seg.mask.size());
    std::cout << "hard foreground " << counts[0] / n << '\n'
              << "middle ground   " << counts[1] / n << '\n'
              << "hard background " << counts[2] / n << '\n';
}
