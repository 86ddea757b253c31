#include "hgen/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hgen/errors.hpp"
#include "hgen/textutil.hpp"

namespace hgen {

PromptLibrary PromptLibrary::load(const std::string& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory))
    throw ConfigError("prompt directory not found: " + directory);
  PromptLibrary library;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    library.templates_[entry.path().stem().string()] = buffer.str();
  }
  if (library.templates_.empty())
    throw ConfigError("prompt directory has no *.txt templates: " + directory);
  return library;
}

std::string PromptLibrary::render(
    const std::string& name,
    const std::map<std::string, std::string>& values) const {
  auto it = templates_.find(name);
  if (it == templates_.end())
    throw ArgumentError("unknown prompt template: " + name);
  return render_template(it->second, values);
}

}  // namespace hgen
