static void flush_context_cache(struct kmem_cache *cache)
{
	spin_lock(&cache->lock);
	__flush_context(cache);
	spin_unlock(&cache->lock);
}
