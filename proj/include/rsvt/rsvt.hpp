#pragma once

// Umbrella header. Codec I/O lives separately in rsvt/io.hpp (needs OpenCV).

#include "rsvt/atmos.hpp"
#include "rsvt/color.hpp"
#include "rsvt/filters.hpp"
#include "rsvt/image.hpp"
#include "rsvt/pipeline.hpp"
#include "rsvt/softseg.hpp"
#include "rsvt/translation.hpp"
