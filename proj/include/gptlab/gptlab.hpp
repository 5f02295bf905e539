#pragma once

#include <gptlab/rational.hpp>
#include <gptlab/linalg.hpp>
#include <gptlab/simplex.hpp>
#include <gptlab/theory.hpp>
#include <gptlab/principles.hpp>
#include <gptlab/theory_json.hpp>
#include <gptlab/random.hpp>
#include <gptlab/boxworld.hpp>
#include <gptlab/zoo.hpp>
#include <gptlab/commcc.hpp>
#include <gptlab/advice.hpp>
#include <gptlab/io.hpp>
