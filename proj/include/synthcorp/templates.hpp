#pragma once

#include <map>
#include <string>
#include <string_view>

namespace synthcorp {

// Prompt templates for the two evaluation tasks. Placeholders:
// relation extraction {F_C} {P_C} {D_C}; taxonomy discovery {F_A} {D_A} {F_B} {D_B}.
struct PromptTemplates {
  std::string relation_extraction;
  std::string taxonomy_discovery;

  static PromptTemplates defaults();
  // Empty paths keep the built-in default for that task.
  static PromptTemplates load(const std::string& re_path, const std::string& td_path);
};

// Single-pass substitution of {key} placeholders. Unknown keys and braces are
// copied unchanged; substituted values are never rescanned.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values);

}  // namespace synthcorp
