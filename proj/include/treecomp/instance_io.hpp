#ifndef TREECOMP_INSTANCE_IO_HPP_
#define TREECOMP_INSTANCE_IO_HPP_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "treecomp/source_model.hpp"

namespace treecomp {

// Throws InputError naming the byte offset of a syntax error or the JSON
// path of a semantic one.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);

nlohmann::json instance_to_json(const Instance& instance);

}  // namespace treecomp

#endif  // TREECOMP_INSTANCE_IO_HPP_
