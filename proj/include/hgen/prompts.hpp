#pragma once

#include <map>
#include <string>

namespace hgen {

// Prompt texts ship as versioned template files ({{placeholder}} syntax)
// so operators can tune wording without rebuilding.
class PromptLibrary {
 public:
  // Loads every *.txt in `directory`; the template name is the file stem.
  static PromptLibrary load(const std::string& directory);

  // Renders the named template. Throws ArgumentError on unknown template
  // or unresolved placeholder.
  std::string render(const std::string& name,
                     const std::map<std::string, std::string>& values) const;

  bool has(const std::string& name) const { return templates_.count(name) > 0; }

 private:
  std::map<std::string, std::string> templates_;
};

}  // namespace hgen
