#pragma once

#include <json.hpp>

namespace kinsl {
using Json = nlohmann::json;
}
