#pragma once

#include <string>
#include <vector>

#include "lozi/report.h"

namespace lozi {

/// Names of the geometry layers in a report, in document order.
std::vector<std::string> figure_layers(const report::Json& doc);

/// SVG drawing of the selected layers, in the given order (later layers on
/// top). Output depends only on the inputs. Throws report::InputError for an
/// empty selection or an unknown layer.
std::string emit_figure(const report::Json& doc, const std::vector<std::string>& layers);

}  // namespace lozi
