/*
 * Copyright (c) 2026 The pictobridge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <string_view>

namespace pictobridge::data {

// Copies of core/data/*.json compiled into the library.
std::string_view catalog_json() noexcept;
std::string_view mapping_json() noexcept;
std::string_view templates_json() noexcept;
std::string_view warehouse_scenario_json() noexcept;

}  // namespace pictobridge::data
