#pragma once

#include "alb.hpp"
#include "bandwidth.hpp"
#include "bayes.hpp"
#include "cutoff.hpp"
#include "dataset.hpp"
#include "experiments.hpp"
#include "kernel.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "screening.hpp"
#include "simgen.hpp"
#include "ttest.hpp"
#include "ttest_screen.hpp"
