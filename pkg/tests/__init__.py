"""Magnetic spectra tests"""
