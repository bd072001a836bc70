#pragma once

#include <string>

namespace minnorm {

// Render an experiment's SVG from its CSV alone (replotting a CSV always
// reproduces the image). `kind` selects axes and series layout.
void plot_csv(const std::string& kind, const std::string& csv_path,
              const std::string& svg_path);

} // namespace minnorm
