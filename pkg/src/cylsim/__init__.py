# -*- coding: utf-8 -*-
# Apache Software License 2.0
#
# Copyright (c) 2024, The cylsim developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
cylsim Module: simulate and verify linear Cauchy problems driven by
cylindrical Levy noise on a spectral model.
"""
__author__ = """The cylsim developers"""
__email__ = 'cylsim@users.noreply.github.com'
__version__ = '0.1.0'
